from fractions import Fraction

from ..errors import UnsupportedSurface
from ..group import ConjClass, ConjKind, UnitaryElement, UnitaryRealization
from ..surfaces import Representation


def rho_class(c: ConjClass) -> Fraction | float:
    """
    Rho invariant of an SL(2,R) boundary class:
    elliptic k(t*pi) -> 2(1 - t), parabolic of trace +2 -> -mu, everything else 0.
    """
    if c.kind == ConjKind.ELLIPTIC:
        return 2 * (1 - c.turn)
    if c.kind == ConjKind.PAR_POS:
        return Fraction(-c.mu_sign)
    return Fraction(0)


def _sgn(t: Fraction) -> int:
    return 1 if t > 0 else 0


def rho_torus(e: UnitaryElement) -> Fraction:
    """
    sum_{j <= p} (sgn t_j - t_j) - sum_{j > p} (sgn t_j - t_j) over the turns t_j in [0, 2) of a
    diagonal torus element of U(p, q).
    """
    if e.realization != UnitaryRealization.DIAGONAL_TORUS:
        raise UnsupportedSurface("Unitary rho needs diagonal torus boundary images.")
    terms = [_sgn(t) - t for t in e.turns]
    return sum(terms[: e.p], Fraction(0)) - sum(terms[e.p :], Fraction(0))


def rho_per_boundary(rep: Representation) -> list[Fraction | float]:
    """Rho of each boundary image, added over the blocks of a direct sum."""
    if rep.summands:
        per = [rho_per_boundary(s) for s in rep.summands]
        return [sum(col, Fraction(0)) for col in zip(*per)]
    if rep.is_sl2:
        return [rho_class(c) for c in rep.boundary_classes]
    return [rho_torus(c) for c in rep.boundary]
