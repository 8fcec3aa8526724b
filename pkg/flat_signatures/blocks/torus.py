"""
One-holed torus blocks. Handle images (A, B) with A = diag(lam, 1/lam) unless stated, boundary
image C = [A, B]^-1. For B = (a b; c d) the commutator has trace 2 - bc (lam - 1/lam)^2.
"""

from fractions import Fraction
import logging
import math

from ..errors import OutOfFamilyRange
from ..group import ConjClass, SL2Element, commutator, inverse, rational_sqrt
from ..group.models import to_number
from ..surfaces import Provenance, Representation, presentation
from ._base import BaseBlock, sign

logger = logging.getLogger(__name__)

F = Fraction

# cos(t pi) for the turns whose elliptic torus has rational entries
EXACT_COS = {F(1, 3): F(1, 2), F(1, 2): F(0), F(2, 3): F(-1, 2)}


def _rational(a, b, c, d) -> SL2Element:
    return SL2Element.rational(a, b, c, d)


def _diag(lam) -> SL2Element:
    return SL2Element.from_entries(lam, 0 * lam, 0 * lam, 1 / lam)


class TorusBlock(BaseBlock):
    genus = 1
    boundaries = 1

    def _pair(self) -> tuple[SL2Element, SL2Element]:
        raise NotImplementedError

    def _images(self):
        a, b = self._pair()
        return [(a, b)], [inverse(commutator(a, b))]


class SchottkyTorus(TorusBlock):
    key = "torus-schottky-0"
    desc = "Schottky torus, boundary trace 5/2"

    def _pair(self):
        return _diag(F(2)), _rational(3, F(1, 3), F(-2, 3), F(7, 27))

    def expected_signature(self):
        return 0


class BorelTorus(TorusBlock):
    """Upper triangular handles; the boundary is (1 -alpha c (lam^2 - 1); 0 1)."""

    key = "torus-borel-pm1"
    desc = "Borel torus with a trace +2 parabolic boundary, signature sign(c)"
    defaults = {"lam": F(2), "alpha": F(1, 2), "c": F(1)}

    def _validate_params(self):
        lam = self.params["lam"]
        self._require(lam > 0 and lam != 1, "lam must be positive and different from 1.")
        self._require(self.params["alpha"] > 0, "alpha must be positive.")
        self._require(self.params["c"] != 0, "c = 0 makes the boundary trivial.")

    def _pair(self):
        alpha, c = self.params["alpha"], self.params["c"]
        return _diag(self.params["lam"]), _rational(alpha, c, 0, 1 / alpha)

    def expected_signature(self):
        return sign(self.params["c"]) * sign(self.params["lam"] - 1)


class FuchsianTorus(TorusBlock):
    key = "torus-fuchsian-pm2"
    desc = "Fuchsian torus, boundary trace -5/2 or -17/4"
    defaults = {"trace": F(-5, 2)}

    HANDLES = {
        F(-5, 2): (3, 1, 2, 1),
        F(-17, 4): (2, F(5, 3), F(5, 3), F(17, 9)),
    }

    def _validate_params(self):
        self._require(
            self.params["trace"] in self.HANDLES,
            f"trace must be one of {[str(t) for t in self.HANDLES]}.",
        )

    def _pair(self):
        return _diag(F(2)), _rational(*self.HANDLES[self.params["trace"]])


class CuspTorus(TorusBlock):
    key = "torus-cusp-pm2"
    desc = "Torus with a trace -2 cusp"

    def _pair(self):
        return _diag(F(2)), _rational(F(5, 3), F(4, 3), F(4, 3), F(5, 3))


class EllipticTorus(TorusBlock):
    """
    Boundary elliptic of turn t in (0, 1), signature +2. B = (1 + qr q; r 1) with q = 2/3 and
    r = (4/3)(1 - cos t pi). Rational for t in {1/3, 1/2, 2/3}, numeric with an exact class
    annotation otherwise.
    """

    key = "torus-elliptic-pm2"
    desc = "Torus with elliptic boundary of turn t, signature +2"
    defaults = {"turn": F(1, 2)}

    def _validate_params(self):
        self._require(0 < self.params["turn"] < 1, "turn must lie in (0, 1).")

    def _pair(self):
        t = self.params["turn"]
        q = F(2, 3)
        if t in EXACT_COS:
            r = F(4, 3) * (1 - EXACT_COS[t])
            return _diag(F(2)), _rational(1 + q * r, q, r, 1)
        r = 4 / 3 * (1 - math.cos(math.pi * t))
        qf = float(q)
        return _diag(F(2)), SL2Element.numeric(1 + qf * r, qf, r, 1.0)

    def _annotations(self):
        return [ConjClass.elliptic(self.params["turn"])]

    def expected_signature(self):
        return 2


class TrivialTorus(TorusBlock):
    key = "torus-trivial-0"
    desc = "Trivial representation of the one-holed torus"

    def _pair(self):
        return SL2Element.identity(), SL2Element.identity()

    def expected_signature(self):
        return 0


class PsiPlusTorus(TorusBlock):
    key = "torus-psi-plus"
    desc = "(diag(lam, 1/lam), k(pi/2)), boundary trace 2 + (lam - 1/lam)^2"
    defaults = {"lam": F(2)}

    def _validate_params(self):
        lam = self.params["lam"]
        self._require(lam > 0 and lam != 1, "lam must be positive and different from 1.")

    def _pair(self):
        return _diag(self.params["lam"]), SL2Element.rotation(F(1, 2))

    def expected_signature(self):
        return 0


class PsiMinusTorus(TorusBlock):
    key = "torus-psi-minus"
    desc = "(diag(lam, 1/lam), (2 1; 1 1)), boundary trace 2 - (lam - 1/lam)^2"
    defaults = {"lam": F(3)}

    def _validate_params(self):
        lam = self.params["lam"]
        self._require(lam > 0 and lam != 1, "lam must be positive and different from 1.")

    def _pair(self):
        return _diag(self.params["lam"]), _rational(2, 1, 1, 1)


def _lam_for_gap(gap: Fraction | float) -> Fraction | float:
    """lam > 1 with lam - 1/lam = sqrt(gap), exact whenever both square roots are rational."""
    if isinstance(gap, Fraction):
        s = rational_sqrt(gap)
        if s is not None:
            root = rational_sqrt(s * s + 4)
            if root is not None:
                return (s + root) / 2
    s = math.sqrt(float(gap))
    return (s + math.sqrt(s * s + 4)) / 2


def torus_commutator_boundary(trace, mode: str = "plus") -> Representation:
    """
    One-holed torus whose boundary has the given hyperbolic trace: mode "plus" uses the psi+
    family (trace > 2), mode "minus" the psi- family (trace < -2).
    """
    tau = to_number(trace)
    if mode == "plus":
        if tau <= 2:
            raise OutOfFamilyRange(f"psi+ needs trace > 2, got {tau}.")
        lam, block = _lam_for_gap(tau - 2), PsiPlusTorus
    elif mode == "minus":
        if tau >= -2:
            raise OutOfFamilyRange(f"psi- needs trace < -2, got {tau}.")
        lam, block = _lam_for_gap(2 - tau), PsiMinusTorus
    else:
        raise ValueError(f"mode must be 'plus' or 'minus', got '{mode}'.")

    if isinstance(lam, Fraction):
        return block(lam=lam).build()

    logger.info(f"{block.key}: irrational lam for trace {tau}, building numerically.")
    a = _diag(lam)
    b = SL2Element.rotation(F(1, 2)) if mode == "plus" else _rational(2, 1, 1, 1)
    return Representation.from_images(
        presentation(1, 1),
        [(a, b)],
        [inverse(commutator(a, b))],
        [ConjClass.hyperbolic(tau)],
        provenance=Provenance(
            step="block", label=block.key, params={"lam": f"{lam:.12f}", "trace": str(tau)}
        ),
    )
