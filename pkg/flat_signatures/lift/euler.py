import logging
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from ..errors import EllipticBoundary, NonCentralProduct
from ..group import ConjClass, ConjKind, SL2Element, negate
from ..surfaces import Representation
from .circle import (
    CENTRAL_TOL,
    DEFAULT_STEPS,
    LiftedElement,
    central_power,
    is_central,
    lifted_inverse,
    lifted_product,
    translation_number,
)

logger = logging.getLogger(__name__)


class LiftedWordResult(BaseModel):
    """A lifted relator and, when it projects to +-I, the power of z it equals."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    product: LiftedElement
    central_power: Optional[int] = Field(None, description="m with product = z^m")


def lift_relator(
    rep: Representation, boundary_lifts: list[LiftedElement], steps: int = DEFAULT_STEPS
) -> LiftedWordResult:
    """
    Evaluate prod [A~_i, B~_i] * C~_1 ... C~_n with canonical handle lifts. The commutators do not
    depend on the handle lift choice.
    """
    factors = []
    for a, b in rep.handles:
        la, lb = LiftedElement.canonical(a, steps), LiftedElement.canonical(b, steps)
        factors += [la, lb, lifted_inverse(la), lifted_inverse(lb)]
    return lifted_word(factors + list(boundary_lifts), steps)


def _require_central(word: LiftedWordResult) -> int:
    if word.central_power is None:
        raise NonCentralProduct(
            f"Lifted relator projects to {word.product.base.matrix}, not +-I."
        )
    return word.central_power


def boundary_rotation(
    c: SL2Element, cls: ConjClass, steps: int = DEFAULT_STEPS
) -> Fraction | float | int:
    """Translation number of the canonical lift of a boundary image, turns from the class."""
    if cls.kind == ConjKind.ELLIPTIC:
        return 2 - cls.turn
    return translation_number(LiftedElement.canonical(c, steps))


def toledo_sl2(rep: Representation, steps: int = DEFAULT_STEPS) -> Fraction | float | int:
    """
    T = -sum_j Rot~(C~_j) for lifts satisfying the relator: all lifts canonical, then C~_n is
    corrected by the central power k of the canonical relator.
    """
    lifts = [LiftedElement.canonical(c, steps) for c in rep.boundary]
    k = _require_central(lift_relator(rep, lifts, steps))
    total = sum(
        (boundary_rotation(c, cls, steps) for c, cls in zip(rep.boundary, rep.boundary_classes)),
        Fraction(0),
    )
    return -(total - k)


def toledo(rep: Representation, steps: int = DEFAULT_STEPS) -> Fraction | float | int:
    """
    Toledo invariant. Direct sums add blockwise (negated on U(p,q)-type sums), unitary torus and
    compact parts contribute 0.
    """
    if rep.summands:
        total = sum((toledo(s, steps) for s in rep.summands if s.is_sl2), Fraction(0))
        return -total if rep.shape.unitary else total
    if not rep.is_sl2:
        return Fraction(0)
    return toledo_sl2(rep, steps)


def goldman_lift(c: SL2Element, cls: ConjClass, steps: int = DEFAULT_STEPS) -> LiftedElement:
    """The lift of sign(tr c) * c with translation number 0."""
    if cls.kind == ConjKind.ELLIPTIC:
        raise EllipticBoundary("Elliptic boundary images have no fixed-point lift.")
    negative = cls.kind in (ConjKind.PAR_NEG, ConjKind.MINUS_IDENTITY) or (
        cls.kind == ConjKind.HYPERBOLIC and cls.trace_sign < 0
    )
    base = negate(c) if negative else c
    lift = LiftedElement.canonical(base, steps)
    shift = translation_number(lift)
    if shift % 2:
        logger.warning(f"Positive-trace boundary lift has odd translation number {shift}.")
    return LiftedElement(base=base, offset=-(int(shift) // 2), steps=steps)


def relative_euler(rep: Representation, steps: int = DEFAULT_STEPS) -> int:
    """
    Relative Euler class m: the relator on Goldman boundary lifts and arbitrary handle lifts
    equals z^m.
    """
    if not rep.is_sl2:
        raise TypeError("relative_euler is defined for SL(2,R) representations.")
    for j, cls in enumerate(rep.boundary_classes):
        if cls.is_elliptic:
            raise EllipticBoundary(f"Boundary C{j + 1} is elliptic.")
    lifts = [goldman_lift(c, cls, steps) for c, cls in zip(rep.boundary, rep.boundary_classes)]
    return _require_central(lift_relator(rep, lifts, steps))


def lifted_word(lifts: list[LiftedElement], steps: int = DEFAULT_STEPS) -> LiftedWordResult:
    """Product of arbitrary lifts with its central power when defined."""
    result = lifted_product(lifts, steps)
    if not is_central(result.base, CENTRAL_TOL):
        return LiftedWordResult(product=result)
    return LiftedWordResult(product=result, central_power=central_power(result))