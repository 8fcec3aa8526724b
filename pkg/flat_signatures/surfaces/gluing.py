"""
Rewriting representations along the standard presentation: gluing two surfaces along a boundary
circle, permuting boundary components, and whole-representation symmetries.
"""

import logging
from typing import Sequence

from ..errors import HolonomyMismatch, InvalidSurface, NonStandardIndex
from ..group import (
    SL2Element,
    boundary_conjugator,
    conjugate,
    direct_sum,
    inverse,
    involution,
    mul,
    negate,
    product,
)
from ..group.sl2 import distance
from .models import Provenance, Representation, check_relator, presentation

logger = logging.getLogger(__name__)

MATCH_TOL = 1e-10


def _require_sl2(rep: Representation, op: str):
    if not rep.is_sl2:
        raise TypeError(f"{op} needs an SL(2,R) representation.")


def _matrix_param(g: SL2Element) -> str:
    q = g.exact_entries
    if q is not None:
        return "[" + ", ".join(str(x) for x in q) + "]"
    return "[" + ", ".join(repr(x) for x in g.entries) + "]"


def glue(
    rep1: Representation,
    i: int,
    rep2: Representation,
    j: int,
    conj: SL2Element | None = None,
) -> Representation:
    """
    Glue the last boundary of rep1 to the first boundary of rep2.

    The witness X must satisfy C_i = X C'_j^-1 X^-1. The handles of rep2 enter conjugated by
    M = C_1...C_{n1-1} X C'_2...C'_{n2}, the remaining boundaries of rep2 by X, so the glued
    images satisfy the standard relator of the (g1 + g2, n1 + n2 - 2) surface.
    """
    _require_sl2(rep1, "glue")
    _require_sl2(rep2, "glue")
    n1, n2 = rep1.n, rep2.n
    if i != n1 - 1 or j != 0:
        raise NonStandardIndex(
            f"Only the last boundary of rep1 (index {n1 - 1}) glues to boundary 0 of rep2; "
            f"got ({i}, {j}). Permute boundaries first."
        )
    if n1 + n2 - 2 < 1:
        raise InvalidSurface("Gluing would close the surface.")

    x_bd, y_bd = rep1.boundary[i], rep2.boundary[j]
    if conj is None:
        conj = boundary_conjugator(x_bd, y_bd, rep1.boundary_classes[i], rep2.boundary_classes[j])
    glued = conjugate(inverse(y_bd), conj)
    exact = glued.exact_entries is not None and x_bd.exact_entries is not None
    if (exact and glued.exact_entries != x_bd.exact_entries) or (
        not exact and distance(glued, x_bd) > MATCH_TOL * max(1.0, abs(x_bd.trace))
    ):
        raise HolonomyMismatch(
            f"Boundary {i} of rep1 is not conjugate to the inverse of boundary {j} of rep2 "
            "through the given witness."
        )

    head = product(rep1.boundary[:-1])
    tail = product(rep2.boundary[1:])
    m = mul(mul(head, conj), tail)

    handles = list(rep1.handles) + [
        (conjugate(a, m), conjugate(b, m)) for a, b in rep2.handles
    ]
    boundary = list(rep1.boundary[:-1]) + [conjugate(c, conj) for c in rep2.boundary[1:]]
    classes = list(rep1.boundary_classes[:-1]) + list(rep2.boundary_classes[1:])

    surface = presentation(rep1.genus + rep2.genus, n1 + n2 - 2)
    rep = Representation(
        surface=surface,
        handles=tuple(handles),
        boundary=tuple(boundary),
        boundary_classes=tuple(classes),
        provenance=Provenance(
            step="glue",
            params={"conjugator": _matrix_param(conj)},
            children=(rep1.provenance, rep2.provenance),
        ),
    )
    check_relator(rep)
    return rep


def cycle_boundaries(rep: Representation) -> Representation:
    """(C_1, ..., C_n) -> (C_2, ..., C_n, C_1) with handles conjugated by C_1^-1."""
    _require_sl2(rep, "cycle_boundaries")
    c1_inv = inverse(rep.boundary[0])
    handles = tuple((conjugate(a, c1_inv), conjugate(b, c1_inv)) for a, b in rep.handles)
    classes = rep.boundary_classes[1:] + rep.boundary_classes[:1]
    return rep.model_copy(
        update={
            "handles": handles,
            "boundary": rep.boundary[1:] + rep.boundary[:1],
            "boundary_classes": classes,
            "provenance": Provenance(step="cycle", children=(rep.provenance,)),
        }
    )


def swap_boundaries(rep: Representation, i: int) -> Representation:
    """(C_i, C_{i+1}) = (X, Y) -> (Y, Y^-1 X Y)."""
    _require_sl2(rep, "swap_boundaries")
    if not 0 <= i < rep.n - 1:
        raise NonStandardIndex(f"Cannot swap boundary {i} with {i + 1} on {rep.surface}.")
    x, y = rep.boundary[i], rep.boundary[i + 1]
    boundary = list(rep.boundary)
    boundary[i], boundary[i + 1] = y, conjugate(x, inverse(y))
    classes = list(rep.boundary_classes)
    classes[i], classes[i + 1] = classes[i + 1], classes[i]
    return rep.model_copy(
        update={
            "boundary": tuple(boundary),
            "boundary_classes": tuple(classes),
            "provenance": Provenance(
                step="swap", params={"index": str(i)}, children=(rep.provenance,)
            ),
        }
    )


def reorder_boundaries(rep: Representation, order: Sequence[int]) -> Representation:
    """
    Move boundary order[k] to position k by adjacent swaps. Each moved image is replaced by a
    conjugate, so classes follow the permutation.
    """
    if sorted(order) != list(range(rep.n)):
        raise NonStandardIndex(f"{list(order)} is not a permutation of range({rep.n}).")
    labels = list(range(rep.n))
    target = {label: k for k, label in enumerate(order)}
    for sweep in range(rep.n):
        for i in range(rep.n - 1 - sweep):
            if target[labels[i]] > target[labels[i + 1]]:
                rep = swap_boundaries(rep, i)
                labels[i], labels[i + 1] = labels[i + 1], labels[i]
    return rep


def involution_rep(rep: Representation) -> Representation:
    """Conjugate every image by diag(1, -1); classes are mirrored and the signature negates."""
    if rep.summands:
        return direct_sum_rep([involution_rep(s) for s in rep.summands])
    _require_sl2(rep, "involution_rep")
    return rep.model_copy(
        update={
            "handles": tuple((involution(a), involution(b)) for a, b in rep.handles),
            "boundary": tuple(involution(c) for c in rep.boundary),
            "boundary_classes": tuple(c.mirrored() for c in rep.boundary_classes),
            "provenance": Provenance(step="involution", children=(rep.provenance,)),
        }
    )


def conjugate_rep(rep: Representation, h: SL2Element) -> Representation:
    """Global conjugation g -> h g h^-1."""
    _require_sl2(rep, "conjugate_rep")
    return rep.model_copy(
        update={
            "handles": tuple((conjugate(a, h), conjugate(b, h)) for a, b in rep.handles),
            "boundary": tuple(conjugate(c, h) for c in rep.boundary),
            "provenance": Provenance(
                step="conjugate", params={"by": _matrix_param(h)}, children=(rep.provenance,)
            ),
        }
    )


def negate_boundaries(rep: Representation, mask: Sequence[int]) -> Representation:
    """Replace C_j by -C_j for j in mask; the relator survives only for an even mask."""
    _require_sl2(rep, "negate_boundaries")
    mask = sorted(set(mask))
    if len(mask) % 2:
        raise HolonomyMismatch("An odd number of boundary negations breaks the relator.")
    if any(not 0 <= j < rep.n for j in mask):
        raise NonStandardIndex(f"Negation mask {mask} out of range for {rep.surface}.")
    boundary = list(rep.boundary)
    classes = list(rep.boundary_classes)
    for j in mask:
        boundary[j] = negate(boundary[j])
        classes[j] = classes[j].negated()
    return rep.model_copy(
        update={
            "boundary": tuple(boundary),
            "boundary_classes": tuple(classes),
            "provenance": Provenance(
                step="negate",
                params={"mask": ",".join(str(j) for j in mask)},
                children=(rep.provenance,),
            ),
        }
    )


def direct_sum_rep(
    parts: Sequence[Representation], rest: Representation | None = None
) -> Representation:
    """
    Blockwise direct sum of SL(2,R) representations of one surface, embedded in SU(k,k), with
    an optional unitary factor appended after the blocks.
    """
    parts = list(parts)
    if not parts:
        raise ValueError("direct_sum_rep needs at least one SL(2,R) summand.")
    for part in parts:
        _require_sl2(part, "direct_sum_rep")
    surface = parts[0].surface
    if any(p.surface != surface for p in parts) or (rest is not None and rest.surface != surface):
        raise InvalidSurface("Direct summands must live on the same surface.")

    def _stack(elements, rest_element):
        e = direct_sum(list(elements))
        if rest_element is None:
            return e
        return e.model_copy(
            update={"p": e.p + rest_element.p, "q": e.q + rest_element.q, "rest": rest_element}
        )

    handles = []
    for k in range(surface.genus):
        rest_pair = rest.handles[k] if rest is not None else (None, None)
        handles.append(
            (
                _stack([p.handles[k][0] for p in parts], rest_pair[0]),
                _stack([p.handles[k][1] for p in parts], rest_pair[1]),
            )
        )
    boundary = [
        _stack([p.boundary[j] for p in parts], rest.boundary[j] if rest is not None else None)
        for j in range(surface.boundaries)
    ]
    summands = tuple(parts) + ((rest,) if rest is not None else ())
    return Representation(
        surface=surface,
        handles=tuple(handles),
        boundary=tuple(boundary),
        summands=summands,
        provenance=Provenance(step="sum", children=tuple(s.provenance for s in summands)),
    )
