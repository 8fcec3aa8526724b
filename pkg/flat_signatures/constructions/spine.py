"""
Spine assembly: a dynamic program over catalog variants glued in a chain along hyperbolic
boundaries with matching exact traces.

Planar surfaces: cap (F, F, out), n - 4 middles (in, F, out), cap (in, F, F).
Positive genus: torus (out), g - 1 handle pieces (pants (in, out, leaf) with a torus glued at the
leaf, the last one (in, F, leaf) when n = 1), then n - 2 middles and a cap.
"""

from functools import lru_cache
from fractions import Fraction
from itertools import permutations
import logging
from typing import Callable, NamedTuple, Optional

from ..blocks import BLOCK_MAP, BlockSpec, block_rep, block_signature
from ..errors import SignatureError
from ..group import ConjClass, ConjKind
from .models import Piece

logger = logging.getLogger(__name__)

F = Fraction

FREE, IN, OUT, LEAF = "free", "in", "out", "leaf"

PANTS_MASKS = [(), (0, 1), (0, 2), (1, 2)]

# Parameter choices beyond the catalog defaults
EXTRA_PARAMS = {
    "pants-centralinv": [
        {"r": r, "e2": e2, "e3": e3} for r in (2, 4) for e2 in (1, -1) for e3 in (1, -1)
    ],
    "torus-fuchsian-pm2": [{"trace": "-5/2"}, {"trace": "-17/4"}],
    "torus-elliptic-pm2": [{"turn": t} for t in ("1/3", "1/2", "2/3")],
}


def hyperparabolic(c: ConjClass) -> bool:
    return c.kind in (ConjKind.HYPERBOLIC, ConjKind.PAR_POS, ConjKind.PAR_NEG)


def paraelliptic(c: ConjClass) -> bool:
    return c.kind != ConjKind.HYPERBOLIC


def glue_label(c: ConjClass) -> Optional[Fraction]:
    """Exact trace of a hyperbolic boundary, the key two boundaries must share to be glued."""
    if c.kind == ConjKind.HYPERBOLIC and isinstance(c.trace, Fraction):
        return c.trace
    return None


class Variant(NamedTuple):
    spec: BlockSpec
    classes: tuple[ConjClass, ...]
    signature: int


class Option(NamedTuple):
    """A way to fill one spine slot."""

    label_in: Optional[Fraction]
    label_out: Optional[Fraction]
    signature: int
    piece: Piece
    label_leaf: Optional[Fraction] = None


@lru_cache(maxsize=None)
def variants(genus: int) -> tuple[Variant, ...]:
    """Every catalog block of the given genus with its sign variants, signatures computed."""
    out = []
    for key, cls in BLOCK_MAP.items():
        if cls.genus != genus:
            continue
        param_sets = EXTRA_PARAMS.get(key, [{}])
        masks = [()] if genus or key == "pants-centralinv" else PANTS_MASKS
        flips = (False,) if key == "pants-centralinv" else (False, True)
        for params in param_sets:
            for mask in masks:
                for inv in flips:
                    spec = BlockSpec.of(key, mask=mask, involution=inv, **params)
                    try:
                        classes = block_rep(spec).boundary_classes
                        out.append(Variant(spec, classes, block_signature(spec)))
                    except SignatureError as e:
                        logger.debug(f"Skipping variant {spec.label()}: {e}")
    return tuple(out)


def slot_options(
    roles: tuple[str, ...], free_ok: Callable[[ConjClass], bool]
) -> list[Option]:
    """Block variants and boundary orders filling the roles, one option per distinct outcome."""
    genus = 1 if len(roles) == 1 else 0
    seen = {}
    for v in variants(genus):
        for order in permutations(range(len(roles))):
            labels = {}
            ok = True
            for role, j in zip(roles, order):
                c = v.classes[j]
                if role == FREE:
                    ok = free_ok(c)
                else:
                    labels[role] = glue_label(c)
                    ok = labels[role] is not None
                if not ok:
                    break
            if not ok:
                continue
            key = (labels.get(IN), labels.get(OUT), labels.get(LEAF), v.signature)
            if key not in seen:
                identity = tuple(order) == tuple(range(len(roles)))
                piece = Piece.of_block(v.spec, v.signature, () if identity else order)
                seen[key] = Option(key[0], key[1], v.signature, piece, key[2])
    return list(seen.values())


def _handle_options(last: bool, free_ok) -> list[Option]:
    """Pants (in, out|F, leaf) with a torus glued at the leaf."""
    pants = slot_options((IN, FREE if last else OUT, LEAF), free_ok)
    tori = slot_options((IN,), free_ok)
    seen = {}
    for p in pants:
        for t in tori:
            if t.label_in != p.label_leaf:
                continue
            key = (p.label_in, p.label_out, p.signature + t.signature)
            if key not in seen:
                seen[key] = Option(*key, Piece.of_chain([p.piece, t.piece]))
    return list(seen.values())


def spine_slots(genus: int, boundaries: int, free_ok) -> list[list[Option]]:
    g, n = genus, boundaries
    if g == 0:
        if n < 3:
            raise ValueError("Planar spines need n >= 3.")
        if n == 3:
            return [slot_options((FREE, FREE, FREE), free_ok)]
        return (
            [slot_options((FREE, FREE, OUT), free_ok)]
            + [slot_options((IN, FREE, OUT), free_ok)] * (n - 4)
            + [slot_options((IN, FREE, FREE), free_ok)]
        )
    if (g, n) == (1, 1):
        return [slot_options((FREE,), free_ok)]
    slots = [slot_options((OUT,), free_ok)]
    for k in range(g - 1):
        slots.append(_handle_options(n == 1 and k == g - 2, free_ok))
    if n >= 2:
        slots += [slot_options((IN, FREE, OUT), free_ok)] * (n - 2)
        slots.append(slot_options((IN, FREE, FREE), free_ok))
    return slots


def spine_plan(genus: int, boundaries: int, m: int, free_ok) -> Optional[Piece]:
    """
    Chain of slot options with matching glue labels and signatures summing to m, or None.
    """
    slots = spine_slots(genus, boundaries, free_ok)
    # layer[label_out][total] = (previous label, previous total, option)
    layers: list[dict] = []
    frontier = {None: {0: None}}
    for options in slots:
        layer: dict = {}
        for label, totals in frontier.items():
            for opt in options:
                if opt.label_in != label:
                    continue
                for total in totals:
                    new = total + opt.signature
                    bucket = layer.setdefault(opt.label_out, {})
                    if new not in bucket:
                        bucket[new] = (label, total, opt)
        layers.append(layer)
        frontier = layer

    if m not in frontier.get(None, {}):
        return None
    chain = []
    label, total = None, m
    for layer in reversed(layers):
        prev_label, prev_total, opt = layer[label][total]
        chain.append(opt.piece)
        label, total = prev_label, prev_total
    chain.reverse()
    return Piece.of_chain(chain)
