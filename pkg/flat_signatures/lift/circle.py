"""
Arithmetic in the universal cover of SL(2,R) acting on the real line.

The line covers the circle of rays in R^2 through u = -psi/pi (psi the ray angle), so a full
turn of rays is a shift by 2. The central element z is the shift by 1, the canonical lift of
k(pi) = -I. Lifts of I are shifts by even integers.
"""

import logging
import math
from fractions import Fraction
from functools import cached_property

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import AmbiguousTrace, NonIntegerCocycle, RefinementUnstable
from ..group import ConjKind, SL2Element, classify, inverse, mul

logger = logging.getLogger(__name__)

PERIOD = 2
COCYCLE_TOL = 1e-6
REFINE_TOL = 1e-9
CENTRAL_TOL = 1e-8
DEFAULT_STEPS = 4


def _start(g: SL2Element) -> float:
    """Theta_g(0) in [0, 2): the coordinate of the ray through g e1."""
    t = g.rotation_turn
    if t is not None:
        return float((2 - t) % 2)
    q = g.exact_entries
    if q is not None and q[2] == 0:
        return 0.0 if q[0] > 0 else 1.0
    (a, _), (c, _) = g.matrix
    u = (-math.atan2(c, a) / math.pi) % PERIOD
    return 0.0 if u >= PERIOD else u


def _clockwise(p: np.ndarray, q: np.ndarray) -> float:
    """Clockwise angle from ray p to ray q, assumed to lie in [0, pi)."""
    cross = p[0] * q[1] - p[1] * q[0]
    dot = p[0] * q[0] + p[1] * q[1]
    angle = -math.atan2(cross, dot)
    return max(angle, 0.0) if angle > -math.pi / 2 else angle + 2 * math.pi


def _walk(m: np.ndarray, start: float, x0: float, steps: int) -> float:
    total = 0.0
    prev = m[:, 0]
    for i in range(1, steps + 1):
        xi = math.pi * x0 * i / steps
        cur = m @ np.array([math.cos(xi), -math.sin(xi)])
        total += _clockwise(prev, cur)
        prev = cur
    return start + total / math.pi


def base_lift_eval(g: SL2Element, x: float, steps: int = DEFAULT_STEPS) -> float:
    """
    Theta_g(x) for the canonical lift of g, the continuous monotone lift with Theta_g(0) in
    [0, 2). Evaluated by path continuation on [0, x mod 1] and checked against a twice finer
    subdivision.
    """
    if steps < 1:
        raise ValueError(f"lift_steps must be positive, got {steps}.")
    t = g.rotation_turn
    if t is not None:
        return x + float((2 - t) % 2)

    k = math.floor(x)
    x0 = x - k
    start = _start(g)
    if x0 == 0:
        return start + k

    m = g.array()
    coarse = _walk(m, start, x0, steps)
    fine = _walk(m, start, x0, 2 * steps)
    if abs(coarse - fine) > REFINE_TOL:
        raise RefinementUnstable(
            f"Lift of {g.matrix} at {x!r}: {coarse!r} vs {fine!r} after refinement."
        )
    return fine + k


class LiftedElement(BaseModel):
    """
    The lift Theta_base + 2 * offset of base to the universal cover. Products and inverses
    keep the path subdivision count of their factors.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: SL2Element = Field(..., description="Image in SL(2,R)")
    offset: int = Field(0, description="Number of full ray turns added to the canonical lift")
    steps: int = Field(DEFAULT_STEPS, ge=1, description="Path subdivisions when evaluating")

    @classmethod
    def canonical(cls, g: SL2Element, steps: int = DEFAULT_STEPS) -> "LiftedElement":
        return cls(base=g, offset=0, steps=steps)

    @classmethod
    def central(cls, k: int, steps: int = DEFAULT_STEPS) -> "LiftedElement":
        """z^k, the shift by k."""
        base = SL2Element.rotation(k % 2)
        return cls(base=base, offset=k // 2, steps=steps)

    def __call__(self, x: float) -> float:
        return base_lift_eval(self.base, x, self.steps) + PERIOD * self.offset

    @cached_property
    def transl(self) -> Fraction | float | int:
        return translation_number(self)

    def shifted(self, k: int) -> "LiftedElement":
        """z^k composed with this lift."""
        return lifted_mul(LiftedElement.central(k, self.steps), self)

    def __mul__(self, other: "LiftedElement") -> "LiftedElement":
        return lifted_mul(self, other)


def euler_cocycle(
    g1: SL2Element,
    g2: SL2Element,
    base: SL2Element | None = None,
    steps: int = DEFAULT_STEPS,
) -> int:
    """tau(g1, g2) = Theta_g1(Theta_g2(0)) - Theta_g1g2(0), an even integer."""
    base = base if base is not None else mul(g1, g2)
    inner = base_lift_eval(g2, 0.0, steps)
    raw = base_lift_eval(g1, inner, steps) - base_lift_eval(base, 0.0, steps)
    r = round(raw)
    if abs(raw - r) > COCYCLE_TOL or r % 2:
        raise NonIntegerCocycle(f"Euler cocycle value {raw!r} is not an even integer.")
    return r


def lifted_mul(l1: LiftedElement, l2: LiftedElement) -> LiftedElement:
    base = mul(l1.base, l2.base)
    steps = max(l1.steps, l2.steps)
    tau = euler_cocycle(l1.base, l2.base, base, steps)
    return LiftedElement(base=base, offset=l1.offset + l2.offset + tau // 2, steps=steps)


def lifted_product(lifts, steps: int = DEFAULT_STEPS) -> LiftedElement:
    result = LiftedElement.canonical(SL2Element.identity(), steps)
    for lift in lifts:
        result = lifted_mul(result, lift)
    return result


def lifted_inverse(lift: LiftedElement) -> LiftedElement:
    canonical_inverse = LiftedElement.canonical(inverse(lift.base), lift.steps)
    shift = central_power(lifted_mul(lift, canonical_inverse))
    if shift % 2:
        raise NonIntegerCocycle("Lift composed with the inverse lift is not a lift of I.")
    return LiftedElement(base=canonical_inverse.base, offset=-(shift // 2), steps=lift.steps)


def is_central(g: SL2Element, tol: float = CENTRAL_TOL) -> bool:
    q = g.exact_entries
    if q is not None:
        return q[1] == 0 and q[2] == 0 and q[0] == q[3]
    (a, b), (c, d) = g.matrix
    return max(abs(b), abs(c), abs(a - d)) <= tol


def central_power(lift: LiftedElement) -> int:
    """The k with lift = z^k, for a lift of +-I."""
    value = lift(0.0)
    k = round(value)
    if abs(value - k) > COCYCLE_TOL:
        raise NonIntegerCocycle(f"Lift of a central element moves 0 to {value!r}.")
    return k


def _eigen_coordinate(g: SL2Element) -> float:
    """Coordinate of a ray spanned by a real eigenvector (or near-eigenvector) of g."""
    (a, b), (c, d) = g.matrix
    tr = a + d
    disc = max(0.0, tr * tr / 4 - 1)
    lam = tr / 2 + math.copysign(math.sqrt(disc), tr)
    scale = max(1.0, abs(a), abs(b), abs(c), abs(d))
    if abs(b) > 1e-14 * scale:
        v = (b, lam - a)
    elif abs(c) > 1e-14 * scale:
        v = (lam - d, c)
    else:
        v = (1.0, 0.0) if abs(a - lam) <= abs(d - lam) else (0.0, 1.0)
    return (-math.atan2(v[1], v[0]) / math.pi) % PERIOD


def translation_number(lift: LiftedElement) -> Fraction | float | int:
    """
    Closed-form translation number: integers for hyperbolic, parabolic and central bases,
    2 - t + 2 * offset for an elliptic base conjugate to k(t*pi).
    """
    g = lift.base
    t = g.rotation_turn
    if t is not None:
        return (2 - t) % 2 + PERIOD * lift.offset

    try:
        cls = classify(g)
    except AmbiguousTrace:
        if not is_central(g):
            raise
        return central_power(lift)
    kind = cls.kind

    if kind == ConjKind.ELLIPTIC:
        return 2 - cls.turn + PERIOD * lift.offset
    if kind in (ConjKind.PLUS_IDENTITY, ConjKind.MINUS_IDENTITY):
        return central_power(lift)

    x = _eigen_coordinate(g)
    value = lift(x) - x
    r = round(value)
    if abs(value - r) > COCYCLE_TOL:
        logger.warning(f"Eigen-ray displacement {value!r} is not near an integer.")
    return r


def iterated_translation(lift: LiftedElement, n: int = 4096) -> float:
    """F^n(0) / n, the defining limit, for cross-checking the closed form."""
    x = 0.0
    for _ in range(n):
        x = lift(x)
    return x / n
