from enum import Enum
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..blocks import BlockSpec
from ..group.models import Rational
from ..invariants import ValueFamily, ValueSetSpec

_FROZEN = ConfigDict(frozen=True, extra="ignore", use_enum_values=True)


class PlanTarget(BaseModel):
    """A signature to realize on the (g, n) surface within a family of representations."""

    model_config = _FROZEN

    family: ValueFamily
    genus: int = Field(..., ge=0)
    boundaries: int = Field(..., ge=1)
    m: int = Field(..., description="Target signature")
    p: int = Field(1, ge=0, description="Rank for Sp(2p,R), U(p), U(p,q) families")
    q: int = Field(0, ge=0)

    def __init__(self, family, genus, boundaries, m, p: int = 1, q: int = 0, **kw):
        super().__init__(family=family, genus=genus, boundaries=boundaries, m=m, p=p, q=q, **kw)

    @property
    def chi(self) -> int:
        return 2 - 2 * self.genus - self.boundaries

    @property
    def value_spec(self) -> ValueSetSpec:
        return ValueSetSpec(
            family=self.family, genus=self.genus, boundaries=self.boundaries, p=self.p, q=self.q
        )

    def __str__(self) -> str:
        return f"{self.family} ({self.genus},{self.boundaries}) m={self.m}"


class PieceKind(str, Enum):
    BLOCK = "block"
    ROTATION = "rotation"
    ASSEMBLY = "assembly"


class Piece(BaseModel):
    """
    One node of an assembly: a catalog block, a rotation representation, or an ordered chain of
    pieces glued last boundary to first boundary. `order` permutes the boundaries afterwards.
    """

    model_config = _FROZEN

    kind: PieceKind
    block: Optional[BlockSpec] = None
    genus: int = Field(0, ge=0, description="Genus of a rotation piece")
    turns: tuple[Rational, ...] = Field((), description="Boundary turns of a rotation piece")
    chain: tuple["Piece", ...] = Field((), description="Pieces of an assembly, in glue order")
    order: tuple[int, ...] = Field((), description="Boundary permutation applied after build")
    signature: int = Field(..., description="Expected signature of this piece")

    @model_validator(mode="after")
    def check_kind(self):
        if self.kind == PieceKind.BLOCK and self.block is None:
            raise ValueError("Block pieces need a BlockSpec.")
        if self.kind == PieceKind.ROTATION and not self.turns:
            raise ValueError("Rotation pieces need boundary turns.")
        if self.kind == PieceKind.ASSEMBLY and not self.chain:
            raise ValueError("Assembly pieces need at least one piece.")
        return self

    @classmethod
    def of_block(cls, spec: BlockSpec, signature: int, order=()) -> "Piece":
        return cls(kind=PieceKind.BLOCK, block=spec, signature=signature, order=tuple(order))

    @classmethod
    def of_turns(cls, genus: int, turns, signature: int, order=()) -> "Piece":
        return cls(
            kind=PieceKind.ROTATION,
            genus=genus,
            turns=tuple(Fraction(t) for t in turns),
            signature=signature,
            order=tuple(order),
        )

    @classmethod
    def of_chain(cls, chain, order=()) -> "Piece":
        chain = tuple(chain)
        if len(chain) == 1 and not order:
            return chain[0]
        return cls(
            kind=PieceKind.ASSEMBLY,
            chain=chain,
            signature=sum(p.signature for p in chain),
            order=tuple(order),
        )

    def describe(self, indent: int = 0) -> str:
        pad = "  " * indent
        order = f" order={list(self.order)}" if self.order else ""
        if self.kind == PieceKind.BLOCK:
            return f"{pad}{self.block.label()} sign={self.signature}{order}"
        if self.kind == PieceKind.ROTATION:
            turns = ", ".join(str(t) for t in self.turns)
            return f"{pad}rotation g={self.genus} turns=({turns}) sign={self.signature}{order}"
        lines = [f"{pad}glue chain sign={self.signature}{order}"]
        lines += [p.describe(indent + 1) for p in self.chain]
        return "\n".join(lines)


Piece.model_rebuild()


class UnitaryRecipe(BaseModel):
    """Parameters of a diagonal-torus or U(p) builder."""

    model_config = _FROZEN

    builder: str = Field(..., description="up, upq_genus0 or negative_part")
    genus: int
    boundaries: int
    p: int
    q: int = 0
    m: int


class AssemblyPlan(BaseModel):
    """
    How a target is realized. SL(2,R) routes carry a root piece; direct sums carry sub-plans for
    their SL(2,R) blocks and an optional unitary recipe appended after them.
    """

    model_config = _FROZEN

    target: PlanTarget
    route: str = Field(..., description="Name of the construction route")
    root: Optional[Piece] = None
    parts: tuple["AssemblyPlan", ...] = ()
    unitary: Optional[UnitaryRecipe] = None

    def describe(self) -> str:
        lines = [f"{self.target} via {self.route}"]
        if self.root is not None:
            lines.append(self.root.describe(1))
        lines += ["  " + p.describe().replace("\n", "\n  ") for p in self.parts]
        if self.unitary is not None:
            u = self.unitary
            lines.append(f"  {u.builder} p={u.p} q={u.q} m={u.m}")
        return "\n".join(lines)


AssemblyPlan.model_rebuild()
