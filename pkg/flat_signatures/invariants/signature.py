import logging
from fractions import Fraction
from typing import Annotated, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer

from ..errors import IntegralityFailure
from ..group import ConjKind
from ..group.models import to_number
from ..lift import DEFAULT_STEPS, relative_euler, toledo
from ..surfaces import GroupShape, Representation
from .rho import rho_per_boundary

logger = logging.getLogger(__name__)

INTEGRALITY_TOL = 1e-6


def _report_number(v: Fraction | float) -> str:
    return str(v) if isinstance(v, Fraction) else f"{float(v):.12f}"


ReportNumber = Annotated[
    Fraction | float,
    BeforeValidator(to_number),
    PlainSerializer(_report_number, return_type=str),
]


class InvariantReport(BaseModel):
    """Formula-side invariants of one representation."""

    model_config = ConfigDict(
        frozen=True, extra="ignore", use_enum_values=True, arbitrary_types_allowed=True
    )

    genus: int = Field(..., ge=0)
    boundaries: int = Field(..., ge=1)
    convention: str = Field(..., description="Which signature formula applied")
    toledo: ReportNumber = Field(..., description="Toledo invariant T")
    rho_per_boundary: tuple[ReportNumber, ...] = Field(..., description="rho of each C_j")
    rho_total: ReportNumber
    signature_formula: int
    signature_oracle: Optional[int] = Field(None, description="Filled in by the oracle")
    bound: int = Field(..., description="Milnor-Wood cap for the target group")
    relative_euler: Optional[int] = Field(
        None, description="Relative Euler class when every boundary image is non-elliptic"
    )
    toledo_matches_euler: Optional[bool] = None
    flags: dict[str, bool] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        agree = self.signature_oracle is None or self.signature_oracle == self.signature_formula
        return agree and all(self.flags.values())


def milnor_wood_bound(shape: GroupShape, chi: int, genus: int = 0) -> int:
    """
    2p|chi| for Sp(2p,R) and SU(p,p), (p+q)|chi| for U(p,q), refined to max{0, np - 2} for
    compact U(p) on surfaces of positive genus.
    """
    if chi > 0:
        raise ValueError(f"Milnor-Wood bounds need chi <= 0, got {chi}.")
    if not shape.unitary:
        return 2 * shape.p * abs(chi)
    if genus >= 1 and (shape.p == 0 or shape.q == 0):
        n = 2 - 2 * genus - chi
        return max(0, n * (shape.p + shape.q) - 2)
    return (shape.p + shape.q) * abs(chi)


def signature_of(rep: Representation, lift_steps: int = DEFAULT_STEPS) -> InvariantReport:
    """
    sign = 2T + rho on Sp-type representations and -2T + rho on U(p,q)-type ones, with the
    integrality, Milnor-Wood and parity checks recorded as flags.
    """
    shape = rep.shape
    t = toledo(rep, lift_steps)
    rhos = rho_per_boundary(rep)
    rho = sum(rhos, Fraction(0))
    raw = (-2 * t if shape.unitary else 2 * t) + rho
    sig = round(raw)
    if abs(raw - sig) > INTEGRALITY_TOL:
        raise IntegralityFailure(f"2T + rho = {float(raw)!r} is not an integer.")

    chi = rep.surface.chi
    bound = milnor_wood_bound(shape, chi, rep.genus) if chi <= 0 else 0
    flags = {"integral": True, "within_bound": abs(sig) <= bound}
    if not flags["within_bound"]:
        logger.error(f"Signature {sig} exceeds the Milnor-Wood bound {bound} on {rep.surface}.")

    m = None
    matches = None
    if rep.is_sl2:
        kinds = [c.kind for c in rep.boundary_classes]
        if ConjKind.PAR_POS not in kinds:
            flags["parity_even"] = sig % 2 == 0
        if ConjKind.ELLIPTIC not in kinds:
            m = relative_euler(rep, lift_steps)
            matches = abs(t - m) <= 1e-8
            flags["toledo_matches_euler"] = matches

    return InvariantReport(
        genus=rep.genus,
        boundaries=rep.n,
        convention=shape.convention,
        toledo=t,
        rho_per_boundary=tuple(rhos),
        rho_total=rho,
        signature_formula=sig,
        bound=bound,
        relative_euler=m,
        toledo_matches_euler=matches,
        flags=flags,
    )
