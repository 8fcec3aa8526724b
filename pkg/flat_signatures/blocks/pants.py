"""
Pair-of-pants blocks. Boundary images (C1, C2, C3) satisfy C1 C2 C3 = I; the third image is
always computed as (C1 C2)^-1.
"""

from fractions import Fraction

from ..group import SL2Element, inverse, mul
from ._base import BaseBlock, sign

F = Fraction


def _rational(a, b, c, d) -> SL2Element:
    return SL2Element.rational(a, b, c, d)


def _diag(lam: Fraction) -> SL2Element:
    return _rational(lam, 0, 0, 1 / lam)


class PantsBlock(BaseBlock):
    genus = 0
    boundaries = 3

    def _pair(self) -> tuple[SL2Element, SL2Element]:
        raise NotImplementedError

    def _images(self):
        c1, c2 = self._pair()
        return [], [c1, c2, inverse(mul(c1, c2))]


class BorelPants(PantsBlock):
    """Two hyperbolics fixing one common ideal point; the third boundary has trace 17/4."""

    key = "pants-borel-0"
    desc = "Borel pants, boundary (+, +, hyperbolic)"
    defaults = {"lam": F(2), "alpha": F(2), "c": F(1)}

    def _validate_params(self):
        lam, alpha = self.params["lam"], self.params["alpha"]
        self._require(lam > 0 and alpha > 0, "lam and alpha must be positive.")
        self._require(1 not in (lam, alpha, lam * alpha), "Every boundary must be hyperbolic.")

    def _pair(self):
        lam, alpha, c = self.params["lam"], self.params["alpha"], self.params["c"]
        return _diag(lam), _rational(alpha, c, 0, 1 / alpha)

    def expected_signature(self):
        return 0


class Par1Pants(PantsBlock):
    """diag(lam, 1/lam) and (1/lam c; 0 lam): the third boundary is parabolic of trace 2."""

    key = "pants-par1-pm1"
    desc = "Borel pants with one parabolic boundary, signature sign(c)"
    defaults = {"lam": F(2), "c": F(1)}

    def _validate_params(self):
        lam = self.params["lam"]
        self._require(lam > 0 and lam != 1, "lam must be positive and different from 1.")
        self._require(self.params["c"] != 0, "c = 0 makes the third boundary trivial.")

    def _pair(self):
        lam, c = self.params["lam"], self.params["c"]
        return _diag(lam), _rational(1 / lam, c, 0, lam)

    def expected_signature(self):
        return sign(self.params["c"]) * sign(self.params["lam"] - 1)


class FuchsianPants(PantsBlock):
    """Holonomy of a hyperbolic pair of pants; third boundary trace 2 + x."""

    key = "pants-fuchsian-pm2"
    desc = "Fuchsian pants, boundary (+, +, -)"
    defaults = {"x": F(-9, 2)}

    def _validate_params(self):
        self._require(self.params["x"] < -4, "x < -4 keeps the third boundary hyperbolic.")

    def _pair(self):
        return _rational(2, 1, 0, F(1, 2)), _rational(F(1, 2), 0, self.params["x"], 2)

    def expected_signature(self):
        return 2


class FuchsianParnegPants(FuchsianPants):
    key = "pants-fuchsian-parneg-pm2"
    desc = "Fuchsian pants with a trace -2 cusp, boundary (+, +, parabolic)"
    defaults = {}

    def _validate_params(self):
        pass

    def _pair(self):
        return _rational(2, 1, 0, F(1, 2)), _rational(F(1, 2), 0, -4, 2)


class CuspPants(PantsBlock):
    key = "pants-cusp-pm1"
    desc = "Pants with one cusp, boundary (parabolic, +, -)"

    def _pair(self):
        return _rational(1, 1, 0, 1), _rational(2, 0, -5, F(1, 2))

    def expected_signature(self):
        return 1


class TwoCuspPants(PantsBlock):
    """(1 n; 0 1) and (1 0; m 1): third boundary trace 2 + mn <= -2."""

    key = "pants-2cusp-0"
    desc = "Pants with two cusps, boundary (parabolic, parabolic, -)"
    defaults = {"n": F(1), "m": F(-9, 2)}

    def _validate_params(self):
        n, m = self.params["n"], self.params["m"]
        self._require(n > 0, "n must be positive.")
        self._require(2 + m * n <= -2, "The third boundary needs trace 2 + mn <= -2.")

    def _pair(self):
        return _rational(1, self.params["n"], 0, 1), _rational(1, 0, self.params["m"], 1)

    def expected_signature(self):
        return 0


class ThreeCuspPants(TwoCuspPants):
    key = "pants-3cusp-0"
    desc = "Pants with three cusps"
    defaults = {}

    def _validate_params(self):
        pass

    def _pair(self):
        return _rational(1, 1, 0, 1), _rational(1, 0, -4, 1)


class HyperbolicPants(PantsBlock):
    key = "pants-hyperbolic-0"
    desc = "Pants with three positive hyperbolic boundaries of trace 5/2"

    def _pair(self):
        return _diag(F(2)), _rational(F(5, 6), F(7, 18), 1, F(5, 3))

    def expected_signature(self):
        return 0


class BorelParnegPants(PantsBlock):
    key = "pants-borel-parneg-0"
    desc = "Borel pants, boundary (+, -, parabolic of trace -2)"
    defaults = {"lam": F(2), "c": F(1)}

    def _validate_params(self):
        lam = self.params["lam"]
        self._require(lam > 0 and lam != 1, "lam must be positive and different from 1.")
        self._require(self.params["c"] != 0, "c = 0 makes the third boundary -I.")

    def _pair(self):
        lam, c = self.params["lam"], self.params["c"]
        return _diag(lam), _rational(-1 / lam, c, 0, -lam)

    def expected_signature(self):
        return 0


class IdentityPants(PantsBlock):
    key = "pants-identity-0"
    desc = "(A, A^-1, I)"
    defaults = {"lam": F(2)}

    def _validate_params(self):
        lam = self.params["lam"]
        self._require(lam > 0 and lam != 1, "lam must be positive and different from 1.")

    def _pair(self):
        a = _diag(self.params["lam"])
        return a, inverse(a)

    def expected_signature(self):
        return 0


class CentralInversionPants(PantsBlock):
    """
    (-e2 e3 diag(r, 1/r), e2 k(pi/2), e3 (0 -r; 1/r 0)): two elliptic boundaries of angle
    pi/2 or 3pi/2 and a hyperbolic one whose trace is negative exactly when the signature is +-2.
    """

    key = "pants-centralinv"
    desc = "Central-inversion pants, signature e2 + e3"
    defaults = {"r": F(2), "e2": 1, "e3": 1}
    int_params = ("e2", "e3")

    def _validate_params(self):
        r = self.params["r"]
        self._require(r > 0 and r != 1, "r must be positive and different from 1.")
        self._require(
            self.params["e2"] in (1, -1) and self.params["e3"] in (1, -1), "e2, e3 must be +-1."
        )

    def _images(self):
        r, e2, e3 = self.params["r"], self.params["e2"], self.params["e3"]
        g1 = _rational(-e2 * e3 * r, 0, 0, -e2 * e3 / r)
        g2 = SL2Element.rotation(F(1, 2) if e2 > 0 else F(3, 2))
        g3 = _rational(0, -e3 * r, e3 / r, 0)
        return [], [g1, g2, g3]

    def expected_signature(self):
        return self.params["e2"] + self.params["e3"]


class PhiMinusPants(PantsBlock):
    """Odd signature -1 with boundary traces in [-2, 2]."""

    key = "pants-phi-minus"
    desc = "(k(pi/2), parabolic, elliptic), signature -1"

    def _pair(self):
        return SL2Element.rotation(F(1, 2)), _rational(1, 1, 0, 1)

    def expected_signature(self):
        return -1


class PhiPlusPants(PantsBlock):
    key = "pants-phi-plus"
    desc = "(k(3pi/2), parabolic, elliptic), signature +1"

    def _pair(self):
        return SL2Element.rotation(F(3, 2)), _rational(1, -1, 0, 1)

    def expected_signature(self):
        return 1
