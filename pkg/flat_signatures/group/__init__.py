from .models import (
    ConjClass,
    ConjKind,
    GroupElement,
    RationalEntries,
    RotationByPi,
    SL2Element,
    UnitaryElement,
    UnitaryRealization,
    hermitian_form,
)
from .sl2 import (
    EPS_CLASS,
    boundary_conjugator,
    classify,
    commutator,
    conjugate,
    direct_sum,
    elliptic_angle,
    elliptic_turn,
    involution,
    inverse,
    is_identity,
    mul,
    negate,
    normal_form_conjugator,
    product,
    rational_sqrt,
)

__all__ = [
    "ConjClass",
    "ConjKind",
    "GroupElement",
    "RationalEntries",
    "RotationByPi",
    "SL2Element",
    "UnitaryElement",
    "UnitaryRealization",
    "hermitian_form",
    "EPS_CLASS",
    "boundary_conjugator",
    "classify",
    "commutator",
    "conjugate",
    "direct_sum",
    "elliptic_angle",
    "elliptic_turn",
    "involution",
    "inverse",
    "is_identity",
    "mul",
    "negate",
    "normal_form_conjugator",
    "product",
    "rational_sqrt",
]
