from .circle import (
    DEFAULT_STEPS,
    PERIOD,
    LiftedElement,
    base_lift_eval,
    central_power,
    euler_cocycle,
    iterated_translation,
    lifted_inverse,
    lifted_mul,
    lifted_product,
    translation_number,
)
from .euler import (
    LiftedWordResult,
    boundary_rotation,
    goldman_lift,
    lift_relator,
    lifted_word,
    relative_euler,
    toledo,
    toledo_sl2,
)

__all__ = [
    "DEFAULT_STEPS",
    "PERIOD",
    "LiftedElement",
    "base_lift_eval",
    "central_power",
    "euler_cocycle",
    "iterated_translation",
    "lifted_inverse",
    "lifted_mul",
    "lifted_product",
    "translation_number",
    "LiftedWordResult",
    "boundary_rotation",
    "goldman_lift",
    "lift_relator",
    "lifted_word",
    "relative_euler",
    "toledo",
    "toledo_sl2",
]
