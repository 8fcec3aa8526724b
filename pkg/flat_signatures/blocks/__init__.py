from ._base import BaseBlock  # exposed for type hinting.
from .pants import (
    BorelPants,
    BorelParnegPants,
    CentralInversionPants,
    CuspPants,
    FuchsianPants,
    FuchsianParnegPants,
    HyperbolicPants,
    IdentityPants,
    Par1Pants,
    PhiMinusPants,
    PhiPlusPants,
    ThreeCuspPants,
    TwoCuspPants,
)
from .torus import (
    BorelTorus,
    CuspTorus,
    EllipticTorus,
    FuchsianTorus,
    PsiMinusTorus,
    PsiPlusTorus,
    SchottkyTorus,
    TrivialTorus,
    torus_commutator_boundary,
)

# Map catalog keys to their classes
BLOCK_MAP = {
    cls.key: cls
    for cls in (
        BorelPants,
        Par1Pants,
        FuchsianPants,
        FuchsianParnegPants,
        CuspPants,
        TwoCuspPants,
        ThreeCuspPants,
        HyperbolicPants,
        BorelParnegPants,
        IdentityPants,
        CentralInversionPants,
        PhiMinusPants,
        PhiPlusPants,
        SchottkyTorus,
        BorelTorus,
        FuchsianTorus,
        CuspTorus,
        EllipticTorus,
        TrivialTorus,
        PsiPlusTorus,
        PsiMinusTorus,
    )
}

from .catalog import BlockSpec, block_rep, block_signature, catalog_rows, parse_block  # noqa: E402

__all__ = [
    "BLOCK_MAP",
    "BaseBlock",
    "BlockSpec",
    "block_rep",
    "block_signature",
    "catalog_rows",
    "parse_block",
    "torus_commutator_boundary",
]
