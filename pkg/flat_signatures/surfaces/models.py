import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field

from ..errors import AmbiguousTrace, HolonomyMismatch, InvalidSurface
from ..group import (
    ConjClass,
    GroupElement,
    SL2Element,
    UnitaryElement,
    UnitaryRealization,
    classify,
    commutator,
    is_identity,
    product,
)

logger = logging.getLogger(__name__)

RELATOR_TOL = 1e-8
TURN_TOL = 1e-9


class SurfacePresentation(BaseModel):
    """
    Standard presentation <A_i, B_i, C_j | [A_1,B_1]...[A_g,B_g] C_1...C_n> of a compact
    oriented surface of genus g with n boundary circles.
    """

    model_config = ConfigDict(frozen=True, extra="ignore")

    genus: int = Field(..., ge=0, description="Genus g")
    boundaries: int = Field(..., ge=0, description="Number of boundary components n")

    @computed_field
    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundaries

    @property
    def chi(self) -> int:
        return self.euler_characteristic

    @property
    def handle_names(self) -> list[tuple[str, str]]:
        return [(f"A{i}", f"B{i}") for i in range(1, self.genus + 1)]

    @property
    def boundary_names(self) -> list[str]:
        return [f"C{j}" for j in range(1, self.boundaries + 1)]

    @property
    def generator_names(self) -> list[str]:
        return [x for pair in self.handle_names for x in pair] + self.boundary_names

    @property
    def relator(self) -> list[tuple[str, int]]:
        """The relator as (generator, exponent) letters."""
        word = []
        for a, b in self.handle_names:
            word += [(a, 1), (b, 1), (a, -1), (b, -1)]
        return word + [(c, 1) for c in self.boundary_names]

    @property
    def relator_length(self) -> int:
        return 4 * self.genus + self.boundaries

    @property
    def free_rank(self) -> int:
        if self.boundaries == 0:
            raise InvalidSurface("Closed surface groups are not free.")
        return 2 * self.genus + self.boundaries - 1

    def __str__(self) -> str:
        return f"Surface(g={self.genus}, n={self.boundaries}, chi={self.chi})"


def presentation(g: int, n: int) -> SurfacePresentation:
    if g < 0 or n < 0:
        raise InvalidSurface(f"Genus and boundary count must be nonnegative, got ({g}, {n}).")
    if n == 0:
        raise InvalidSurface("Closed surfaces (n = 0) are not supported.")
    return SurfacePresentation(genus=g, boundaries=n)


class Provenance(BaseModel):
    """One node of the construction trace recorded in certificates."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    step: str = Field(..., description="block, glue, so2, swap, cycle, involution, sum, ...")
    label: str = Field("", description="Catalog key or plan identifier")
    params: dict[str, str] = Field(default_factory=dict)
    children: tuple["Provenance", ...] = Field(())

    def leaves(self) -> list["Provenance"]:
        if not self.children:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]


Provenance.model_rebuild()


class GroupShape(BaseModel):
    """Target group of a representation: Sp-type (SL(2,R)^p) or U(p,q)-type."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    unitary: bool = Field(..., description="True for U(p,q)-type targets")
    p: int = Field(..., ge=0)
    q: int = Field(..., ge=0)

    @property
    def convention(self) -> str:
        return "u(p,q): sign = -2T + rho" if self.unitary else "sp: sign = 2T + rho"


class Representation(BaseModel):
    """
    A homomorphism from the surface group, stored as generator images.

    SL(2,R) representations carry one ConjClass per boundary component. Direct sums keep their
    summands so invariants and the oracle can work blockwise.
    """

    model_config = ConfigDict(frozen=True, extra="ignore", arbitrary_types_allowed=True)

    surface: SurfacePresentation
    handles: tuple[tuple[GroupElement, GroupElement], ...] = Field(
        (), description="Images (A_i, B_i) of the handle generators"
    )
    boundary: tuple[GroupElement, ...] = Field(..., description="Images C_j of boundary loops")
    boundary_classes: tuple[ConjClass, ...] = Field(
        (), description="Boundary conjugacy classes (SL(2,R) representations only)"
    )
    summands: tuple["Representation", ...] = Field(
        (), description="Blocks of a direct sum, in block order"
    )
    provenance: Provenance = Field(default_factory=lambda: Provenance(step="user"))

    @classmethod
    def from_images(
        cls,
        surface: SurfacePresentation,
        handles,
        boundary,
        boundary_classes=None,
        provenance: Provenance | None = None,
        check: bool = True,
    ) -> "Representation":
        """
        Build an SL(2,R) or unitary representation, checking the relator and resolving boundary
        classes (annotations win inside the ambiguity band).
        """
        handles = tuple((a, b) for a, b in handles)
        boundary = tuple(boundary)
        if len(handles) != surface.genus or len(boundary) != surface.boundaries:
            raise InvalidSurface(
                f"{surface} needs {surface.genus} handle pairs and {surface.boundaries} "
                f"boundary images, got {len(handles)} and {len(boundary)}."
            )
        classes = ()
        if boundary and all(isinstance(c, SL2Element) for c in boundary):
            classes = resolve_classes(boundary, boundary_classes)
        rep = cls(
            surface=surface,
            handles=handles,
            boundary=boundary,
            boundary_classes=classes,
            provenance=provenance or Provenance(step="user"),
        )
        if check:
            check_relator(rep)
        return rep

    @property
    def genus(self) -> int:
        return self.surface.genus

    @property
    def n(self) -> int:
        return self.surface.boundaries

    @property
    def is_sl2(self) -> bool:
        return not self.summands and all(isinstance(c, SL2Element) for c in self.boundary)

    @property
    def is_direct_sum(self) -> bool:
        return bool(self.summands)

    @property
    def images(self) -> dict[str, GroupElement]:
        out = {}
        for (na, nb), (a, b) in zip(self.surface.handle_names, self.handles):
            out[na], out[nb] = a, b
        out.update(zip(self.surface.boundary_names, self.boundary))
        return out

    @property
    def shape(self) -> GroupShape:
        if self.summands:
            shapes = [s.shape for s in self.summands]
            unitary = any(s.unitary for s in shapes)
            return GroupShape(
                unitary=unitary, p=sum(s.p for s in shapes), q=sum(s.q for s in shapes)
            )
        if self.is_sl2:
            return GroupShape(unitary=False, p=1, q=1)
        first = self.boundary[0]
        return GroupShape(unitary=True, p=first.p, q=first.q)

    def boundary_traces(self) -> list[float]:
        return [c.trace for c in self.boundary]


Representation.model_rebuild()


def resolve_classes(boundary, annotations=None) -> tuple[ConjClass, ...]:
    """
    Classify each boundary image. An annotation must agree with a decisive classification; inside
    the ambiguity band the annotation is used and a warning is logged.
    """
    annotations = list(annotations) if annotations is not None else [None] * len(boundary)
    if len(annotations) != len(boundary):
        raise InvalidSurface("One boundary class per boundary component is required.")
    out = []
    for j, (c, note) in enumerate(zip(boundary, annotations)):
        try:
            computed = classify(c)
        except AmbiguousTrace:
            if note is None:
                raise
            logger.warning(f"Boundary C{j + 1} resolved by annotation {note.kind} in the band.")
            out.append(note)
            continue
        if note is not None and not _same_class(note, computed):
            raise HolonomyMismatch(
                f"Boundary C{j + 1} annotated {note.kind} but classifies as {computed.kind}."
            )
        out.append(note if note is not None else computed)
    return tuple(out)


def _same_class(a: ConjClass, b: ConjClass) -> bool:
    if a.kind != b.kind:
        return False
    if a.is_elliptic:
        return abs(float(a.turn) - float(b.turn)) <= TURN_TOL
    if a.is_parabolic:
        return a.mu_sign == b.mu_sign
    return True


def relator_value(rep: Representation) -> SL2Element:
    """Image of the relator for an SL(2,R) representation."""
    letters = [commutator(a, b) for a, b in rep.handles]
    return product(letters + list(rep.boundary))


def _unitary_matrix(e: UnitaryElement) -> np.ndarray:
    if e.realization == UnitaryRealization.SL2_BLOCKS:
        raise TypeError("SL2 block elements are checked per summand.")
    return e.complex_matrix()


def check_relator(rep: Representation) -> float:
    """
    Raise HolonomyMismatch unless the relator maps to the identity; returns the residual.
    Exact for rational SL(2,R) data and for diagonal tori.
    """
    if rep.summands:
        return max((check_relator(s) for s in rep.summands), default=0.0)

    if rep.is_sl2:
        value = relator_value(rep)
        if value.exact_entries is not None:
            if not is_identity(value):
                raise HolonomyMismatch(f"Relator evaluates to {value.exact_entries}, not I.")
            return 0.0
        residual = float(np.abs(value.array() - np.eye(2)).max())
        if residual > RELATOR_TOL:
            raise HolonomyMismatch(f"Relator residual {residual:.3e} exceeds {RELATOR_TOL}.")
        return residual

    elements = [x for pair in rep.handles for x in pair] + list(rep.boundary)
    if all(e.realization == UnitaryRealization.DIAGONAL_TORUS for e in elements):
        size = rep.boundary[0].p + rep.boundary[0].q
        for k in range(size):
            if sum(c.turns[k] for c in rep.boundary) % 2 != 0:
                raise HolonomyMismatch(f"Torus factor {k} does not close up.")
        return 0.0

    size = rep.boundary[0].p + rep.boundary[0].q
    value = np.eye(size, dtype=complex)
    for a, b in rep.handles:
        ma, mb = _unitary_matrix(a), _unitary_matrix(b)
        value = value @ ma @ mb @ np.linalg.inv(ma) @ np.linalg.inv(mb)
    for c in rep.boundary:
        value = value @ _unitary_matrix(c)
    residual = float(np.abs(value - np.eye(size)).max())
    if residual > RELATOR_TOL:
        raise HolonomyMismatch(f"Unitary relator residual {residual:.3e} exceeds {RELATOR_TOL}.")
    if not math.isfinite(residual):
        raise HolonomyMismatch("Unitary relator is not finite.")
    return residual
