"""
Catalog lookups: key parsing with the signed aliases, and cached block representations and
signatures for the planner.
"""

from functools import lru_cache
import logging
import re

from pydantic import BaseModel, ConfigDict, Field

from ..invariants import signature_of
from ..surfaces import Representation, involution_rep, negate_boundaries
from . import BLOCK_MAP

logger = logging.getLogger(__name__)

_SIGNED = re.compile(r"^(.*)-([+-])(\d)$")
_CENTRAL = re.compile(r"^pants-centralinv-(-?[02])$")
_CENTRAL_SIGNS = {"2": (1, 1), "0": (1, -1), "-2": (-1, -1)}


class BlockSpec(BaseModel):
    """A catalog block with parameters, an even negation mask and an optional involution."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    key: str
    params: tuple[tuple[str, str], ...] = Field((), description="Sorted (name, value) pairs")
    mask: tuple[int, ...] = Field((), description="Boundaries whose images are negated")
    involution: bool = False

    @classmethod
    def of(cls, key: str, mask=(), involution: bool = False, **params) -> "BlockSpec":
        base = parse_block(key)
        merged = {**dict(base.params), **{k: str(v) for k, v in params.items()}}
        return cls(
            key=base.key,
            params=tuple(sorted(merged.items())),
            mask=tuple(sorted(mask)),
            involution=base.involution ^ involution,
        )

    @property
    def block(self):
        return BLOCK_MAP[self.key](**dict(self.params))

    def label(self) -> str:
        out = self.key
        if self.params:
            out += "(" + ", ".join(f"{k}={v}" for k, v in self.params) + ")"
        if self.mask:
            out += f"[neg {','.join(str(j) for j in self.mask)}]"
        if self.involution:
            out += "[inv]"
        return out


def _normalize(key: str) -> str:
    key = str(key).strip().lower().replace("±", "pm").replace("+-", "pm")
    return key.replace("−", "-")


def parse_block(key: str) -> BlockSpec:
    """
    Resolve a catalog key. Besides the canonical keys this accepts "+1"/"-1" style suffixes for
    the signed families (the minus variant is the involution) and pants-centralinv-{2,0,-2}.
    """
    key = _normalize(key)
    if key in BLOCK_MAP:
        return BlockSpec(key=key)

    m = _CENTRAL.match(key)
    if m:
        e2, e3 = _CENTRAL_SIGNS[m.group(1)]
        return BlockSpec(key="pants-centralinv", params=(("e2", str(e2)), ("e3", str(e3))))

    m = _SIGNED.match(key)
    if m and f"{m.group(1)}-pm{m.group(3)}" in BLOCK_MAP:
        return BlockSpec(key=f"{m.group(1)}-pm{m.group(3)}", involution=m.group(2) == "-")

    raise ValueError(f"Block '{key}' not recognized. Use one of {sorted(BLOCK_MAP)}.")


@lru_cache(maxsize=None)
def block_rep(spec: BlockSpec) -> Representation:
    rep = spec.block.build()
    if spec.mask:
        rep = negate_boundaries(rep, spec.mask)
    if spec.involution:
        rep = involution_rep(rep)
    return rep


@lru_cache(maxsize=None)
def block_signature(spec: BlockSpec) -> int:
    """Signature of a catalog variant, computed by the formula and compared to the catalog."""
    sig = signature_of(block_rep(spec)).signature_formula
    if not spec.mask:
        expected = spec.block.expected_signature()
        if expected is not None and (-expected if spec.involution else expected) != sig:
            logger.error(f"{spec.label()}: catalog signature {expected}, formula gives {sig}.")
    return sig


def catalog_rows() -> list[dict]:
    """One row per catalog block with its default parameters and computed signature."""
    rows = []
    for key, cls in BLOCK_MAP.items():
        spec = BlockSpec(key=key)
        rep = block_rep(spec)
        rows.append(
            {
                "key": key,
                "surface": f"({cls.genus},{cls.boundaries})",
                "desc": cls.desc,
                "defaults": ", ".join(f"{k}={v}" for k, v in cls.defaults.items()),
                "boundary": " ".join(c.kind for c in rep.boundary_classes),
                "signature": block_signature(spec),
            }
        )
    return rows
