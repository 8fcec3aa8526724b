import logging
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable

import numpy as np

from ..errors import AmbiguousTrace, HolonomyMismatch, NotElliptic
from .models import ConjClass, ConjKind, SL2Element, UnitaryElement, UnitaryRealization

logger = logging.getLogger(__name__)

EPS_CLASS = 1e-9
MATCH_TOL = 1e-10


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None when it is irrational."""
    if x < 0:
        return None
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _normalized(m: np.ndarray) -> SL2Element:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if det <= 0:
        raise HolonomyMismatch(f"Numeric product left SL(2,R) (det = {det!r}).")
    return SL2Element.from_array(m / math.sqrt(det))


# ==========================================
# GROUP OPERATIONS
# ==========================================


def mul(g: SL2Element, h: SL2Element) -> SL2Element:
    tg, th = g.rotation_turn, h.rotation_turn
    if tg is not None and th is not None:
        return SL2Element.rotation(tg + th)
    qg, qh = g.exact_entries, h.exact_entries
    if qg is not None and qh is not None:
        a, b, c, d = qg
        e, f, k, m = qh
        return SL2Element.rational(a * e + b * k, a * f + b * m, c * e + d * k, c * f + d * m)
    return _normalized(g.array() @ h.array())


def product(elements: Iterable[SL2Element]) -> SL2Element:
    return reduce(mul, elements, SL2Element.identity())


def inverse(g: SL2Element) -> SL2Element:
    t = g.rotation_turn
    if t is not None:
        return SL2Element.rotation(-t)
    q = g.exact_entries
    if q is not None:
        a, b, c, d = q
        return SL2Element.rational(d, -b, -c, a)
    a, b, c, d = g.entries
    return SL2Element.numeric(d, -b, -c, a)


def conjugate(g: SL2Element, h: SL2Element) -> SL2Element:
    """h g h^-1."""
    return mul(mul(h, g), inverse(h))


def commutator(a: SL2Element, b: SL2Element) -> SL2Element:
    return product((a, b, inverse(a), inverse(b)))


def negate(g: SL2Element) -> SL2Element:
    t = g.rotation_turn
    if t is not None:
        return SL2Element.rotation(t + 1)
    q = g.exact_entries
    if q is not None:
        return SL2Element.rational(*(-x for x in q))
    return SL2Element.numeric(*(-x for x in g.entries))


def involution(g: SL2Element) -> SL2Element:
    """Conjugation by diag(1, -1): [[a, b], [c, d]] -> [[a, -b], [-c, d]]."""
    t = g.rotation_turn
    if t is not None:
        return SL2Element.rotation(-t)
    q = g.exact_entries
    if q is not None:
        a, b, c, d = q
        return SL2Element.rational(a, -b, -c, d)
    a, b, c, d = g.entries
    return SL2Element.numeric(a, -b, -c, d)


def distance(g: SL2Element, h: SL2Element) -> float:
    return float(np.abs(g.array() - h.array()).max())


def is_identity(g: SL2Element, tol: float = 1e-8) -> bool:
    q = g.exact_entries
    if q is not None:
        return q == (1, 0, 0, 1)
    return distance(g, SL2Element.identity()) <= tol


# ==========================================
# CLASSIFICATION
# ==========================================


def _exact_turn(half_trace: Fraction, c) -> Fraction | None:
    base = {
        Fraction(0): Fraction(1, 2),
        Fraction(1, 2): Fraction(1, 3),
        Fraction(-1, 2): Fraction(2, 3),
    }
    t = base.get(half_trace)
    if t is None:
        return None
    return t if c > 0 else 2 - t


def _numeric_turn(half_trace: float, c: float) -> float:
    theta = math.acos(max(-1.0, min(1.0, half_trace)))
    if c < 0:
        theta = 2 * math.pi - theta
    return theta / math.pi


def _classify_exact(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> ConjClass:
    tr = a + d
    if abs(tr) > 2:
        return ConjClass.hyperbolic(tr)
    if abs(tr) == 2:
        if b == 0 and c == 0:
            kind = ConjKind.PLUS_IDENTITY if tr > 0 else ConjKind.MINUS_IDENTITY
            return ConjClass(kind=kind)
        return ConjClass.parabolic(_sign(tr), _sign(b - c))
    turn = _exact_turn(tr / 2, c)
    if turn is None:
        turn = _numeric_turn(float(tr) / 2, float(c))
    return ConjClass.elliptic(turn)


def classify(g: SL2Element, eps: float = EPS_CLASS) -> ConjClass:
    """
    Conjugacy class of g. Exact tags decide; numeric traces within eps of +-2 are refused.
    """
    t = g.rotation_turn
    if t is not None:
        if t == 0:
            return ConjClass(kind=ConjKind.PLUS_IDENTITY)
        if t == 1:
            return ConjClass(kind=ConjKind.MINUS_IDENTITY)
        return ConjClass.elliptic(t)

    q = g.exact_entries
    if q is not None:
        return _classify_exact(*q)

    a, b, c, d = g.entries
    tr = a + d
    if abs(abs(tr) - 2) < eps:
        raise AmbiguousTrace(f"Trace {tr!r} is within {eps} of +-2 and g carries no exact tag.")
    if abs(tr) > 2:
        return ConjClass.hyperbolic(tr)
    return ConjClass.elliptic(_numeric_turn(tr / 2, c))


def elliptic_turn(g: SL2Element) -> Fraction | float:
    """t in (0, 2) with g conjugate to k(t*pi); exact when derivable from the tag."""
    cls = classify(g)
    if not cls.is_elliptic:
        raise NotElliptic(f"Element with trace {g.trace!r} is {cls.kind}, not elliptic.")
    return cls.turn


def elliptic_angle(g: SL2Element) -> float:
    return math.pi * float(elliptic_turn(g))


def direct_sum(parts: list[SL2Element]) -> UnitaryElement:
    if not parts:
        raise ValueError("direct_sum needs at least one SL(2,R) block.")
    k = len(parts)
    return UnitaryElement(
        p=k, q=k, realization=UnitaryRealization.SL2_BLOCKS, blocks=tuple(parts)
    )


# ==========================================
# NORMAL FORMS AND CONJUGATORS
# ==========================================


def _eigenvector(entries, mu):
    a, b, c, d = entries
    if b != 0:
        return b, mu - a
    if c != 0:
        return mu - d, c
    return (1, 0) if a == mu else (0, 1)


def _column_matrix(v, w) -> SL2Element:
    """Matrix with columns v and w rescaled so the determinant is 1."""
    det = v[0] * w[1] - v[1] * w[0]
    w = (w[0] / det, w[1] / det)
    return SL2Element.from_entries(v[0], w[0], v[1], w[1])


def normal_form_conjugator(g: SL2Element, cls: ConjClass | None = None):
    """
    Return (h, normal) with g = h normal h^-1.

    Hyperbolic: normal = diag(lam, 1/lam), |lam| > 1. Parabolic: [[e, kappa], [0, e]].
    Elliptic: the rotation k(t*pi). Central: g itself with h = I.
    """
    cls = cls or classify(g)
    exact = g.exact_entries
    entries = exact if exact is not None else g.entries

    if cls.is_central:
        return SL2Element.identity(), g

    if cls.kind == ConjKind.HYPERBOLIC:
        a, b, c, d = entries
        tr = a + d
        root = rational_sqrt(tr * tr - 4) if exact is not None else None
        if root is None:
            entries = g.entries
            a, b, c, d = entries
            tr = a + d
            root = math.sqrt(tr * tr - 4)
        lam = (tr + _sign(tr) * root) / 2
        v1 = _eigenvector(entries, lam)
        v2 = _eigenvector(entries, 1 / lam)
        h = _column_matrix(v1, v2)
        return h, SL2Element.from_entries(lam, 0 * lam, 0 * lam, 1 / lam)

    if cls.is_parabolic:
        eps = 1 if cls.kind == ConjKind.PAR_POS else -1
        a, b, c, d = entries
        if b != 0 or a != eps:
            v = (b, eps - a)
        else:
            v = (0 * a, 1 + 0 * a)
        if v[0] != 0:
            w = (0 * a, 1 / v[0])
        else:
            w = (-1 / v[1], 0 * a)
        # (g - eI) w lies on the fixed line spanned by v
        nw = ((a - eps) * w[0] + b * w[1], c * w[0] + (d - eps) * w[1])
        kappa = nw[0] / v[0] if v[0] != 0 else nw[1] / v[1]
        h = _column_matrix(v, w)
        return h, SL2Element.from_entries(eps + 0 * a, kappa, 0 * a, eps + 0 * a)

    a, b, c, d = g.entries
    tr = a + d
    y = math.sqrt(max(0.0, 4 - tr * tr)) / (2 * abs(c))
    x = (a - d) / (2 * c)
    h = SL2Element.numeric(math.sqrt(y), x / math.sqrt(y), 0.0, 1 / math.sqrt(y))
    turn = cls.turn
    if isinstance(turn, Fraction):
        normal = SL2Element.rotation(turn)
    else:
        normal = SL2Element.numeric(
            math.cos(math.pi * turn), -math.sin(math.pi * turn),
            math.sin(math.pi * turn), math.cos(math.pi * turn),
        )
    return h, normal


def boundary_conjugator(
    x: SL2Element,
    y: SL2Element,
    x_class: ConjClass | None = None,
    y_class: ConjClass | None = None,
) -> SL2Element:
    """
    Find h with x = h y^-1 h^-1, the matching condition for gluing a boundary with image x to
    a boundary with image y.
    """
    yi = inverse(y)
    x_class = x_class or classify(x)
    # the class of y^-1 is the mirror image of the class of y
    yi_class = y_class.mirrored() if y_class is not None else classify(yi)
    if x_class.kind != yi_class.kind:
        raise HolonomyMismatch(
            f"Cannot glue a {x_class.kind} boundary to a {yi_class.kind} one."
        )

    hx, nx = normal_form_conjugator(x, x_class)
    hy, ny = normal_form_conjugator(yi, yi_class)

    if x_class.is_parabolic:
        kx, ky = nx.exact_entries, ny.exact_entries
        if kx is not None and ky is not None:
            ratio = kx[1] / ky[1]
            s = rational_sqrt(ratio)
        else:
            ratio = nx.matrix[0][1] / ny.matrix[0][1]
            s = None
        if ratio <= 0:
            raise HolonomyMismatch("Parabolic boundaries have opposite orientation classes.")
        if s is None:
            s = math.sqrt(float(ratio))
        scale = SL2Element.from_entries(s, 0 * s, 0 * s, 1 / s)
        h = mul(mul(hx, scale), inverse(hy))
    elif x_class.is_central:
        h = SL2Element.identity()
    else:
        if distance(nx, ny) > 1e-9 * max(1.0, abs(x.trace)):
            raise HolonomyMismatch(
                f"Boundary normal forms differ: {nx.matrix} versus {ny.matrix}."
            )
        h = mul(hx, inverse(hy))

    glued = conjugate(yi, h)
    if distance(glued, x) > MATCH_TOL * max(1.0, float(np.abs(x.array()).max())) * 100:
        raise HolonomyMismatch("Conjugator does not match the boundary images.")
    return h
