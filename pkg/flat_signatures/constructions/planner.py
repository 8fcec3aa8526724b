"""
Assembly planning: choose a construction route for a target signature, record it as an
AssemblyPlan, and execute the plan into a certified representation.
"""

from fractions import Fraction
from itertools import product as iproduct
import logging
from typing import Optional

from ..blocks import BlockSpec, block_rep, block_signature
from ..errors import PlanIncomplete, UnachievableValue, UnsupportedSurface, VerificationFailure
from ..group import ConjKind
from ..invariants import ValueFamily, signature_of, value_set
from ..surfaces import Representation, direct_sum_rep, glue, reorder_boundaries
from .models import AssemblyPlan, Piece, PieceKind, PlanTarget, UnitaryRecipe
from .so2 import rotation_rep, solve_turns, so2_turns
from .spine import hyperparabolic, paraelliptic, spine_plan
from .unitary import negative_part_rep, split_factors, up_rep, upq_genus0_rep

logger = logging.getLogger(__name__)

F = Fraction

PHI_MINUS = BlockSpec(key="pants-phi-minus")
PHI_PLUS = BlockSpec(key="pants-phi-plus")

# Core turn glued to a torus-elliptic leaf of signature +2 (leaf turn 2 - s) or -2 (leaf turn s)
LEAF_TURNS = {2: (F(4, 3), F(3, 2), F(5, 3)), -2: (F(1, 3), F(1, 2), F(2, 3))}


# ==========================================
# PIECES
# ==========================================


def _leaf(core_turn: Fraction, sign: int) -> Piece:
    """Torus-elliptic block whose boundary glues to a core boundary of the given turn."""
    turn = 2 - core_turn if sign > 0 else core_turn
    spec = BlockSpec.of("torus-elliptic-pm2", involution=sign < 0, turn=turn)
    return Piece.of_block(spec, sign)


def _phi(sign: int) -> tuple[Piece, Fraction]:
    """phi+- pants and the core turn its rotation boundary glues to."""
    spec = PHI_PLUS if sign > 0 else PHI_MINUS
    return Piece.of_block(spec, sign), F(1, 2) if sign > 0 else F(3, 2)


def _core(turns, signature: int, free: int) -> Piece:
    """
    Rotation core on (0, N) with the solved turns listed glue slots first; boundaries are reordered
    to (free..., glue...) so pieces attach from the end.
    """
    turns = list(turns)
    glued = len(turns) - free
    return Piece.of_turns(0, turns[glued:] + turns[:glued], signature)


def _cone(
    n: int, g: int, m: int, phi_signs=(1, -1), allow_identity: bool = True
) -> Optional[Piece]:
    """
    Rotation core with g torus-elliptic leaves and, for odd m, one phi pants. The core keeps
    n - 2 (odd m) or n free boundaries.
    """
    phis = [0] if m % 2 == 0 else list(phi_signs)
    for phi_sign in phis:
        free = n - 2 if phi_sign else n
        if free < 0:
            continue
        fixed_phi = []
        phi_piece = None
        if phi_sign:
            phi_piece, phi_turn = _phi(phi_sign)
            fixed_phi = [phi_turn]
        for plus in range(g, -1, -1):
            signs = [2] * plus + [-2] * (g - plus)
            core_sig = m - phi_sign - sum(signs)
            for leaf_turns in iproduct(*(LEAF_TURNS[s] for s in signs)):
                fixed = fixed_phi + list(leaf_turns)
                try:
                    turns = solve_turns(fixed, free, core_sig, allow_identity)
                except UnachievableValue:
                    continue
                chain = [_core(turns, core_sig, free)]
                chain += [_leaf(t, s) for t, s in reversed(list(zip(leaf_turns, signs)))]
                if phi_piece is not None:
                    chain.append(phi_piece)
                return Piece.of_chain(chain)
    return None


# ==========================================
# ROUTES
# ==========================================


def _plan_paraelliptic(t: PlanTarget) -> tuple[str, Piece]:
    g, n, m = t.genus, t.boundaries, t.m
    if g == 0 and m % 2 == 0:
        return "so2", Piece.of_turns(0, so2_turns(n, m), m)
    if g == 0 and n == 3:
        return "phi", _phi(m)[0]
    piece = _cone(n, g, m)
    if piece is not None:
        return "cone", piece
    logger.warning(f"{t}: cone route failed, falling back to the spine route.")
    piece = spine_plan(g, n, m, paraelliptic)
    if piece is None:
        raise PlanIncomplete(f"No paraelliptic assembly found for {t}.")
    return "spine", piece


def _plan_hyperparabolic(t: PlanTarget) -> tuple[str, Piece]:
    piece = spine_plan(t.genus, t.boundaries, t.m, hyperparabolic)
    if piece is None:
        raise PlanIncomplete(f"No hyperparabolic assembly found for {t}.")
    return "spine", piece


def _central_handle(n: int, g: int, m: int) -> Optional[Piece]:
    """
    Genus one with elliptic boundary: rotation core (0, n) glued to a central-inversion pants at
    an elliptic boundary, its hyperbolic boundary capped by a torus (psi+ at trace 17/4 or the
    Fuchsian torus at -17/4).
    """
    if g != 1 or n < 2:
        return None
    for e2, e3 in ((1, -1), (-1, 1), (1, 1), (-1, -1)):
        pants = BlockSpec.of("pants-centralinv", r=4, e2=e2, e3=e3)
        pants_sig = e2 + e3
        if pants_sig == 0:
            tori = [BlockSpec.of("torus-psi-plus", lam=2)]
        else:
            tori = [
                BlockSpec.of("torus-fuchsian-pm2", trace="-17/4", involution=inv)
                for inv in (False, True)
            ]
        # (E glue, E free, H)
        pants_piece = Piece.of_block(pants, pants_sig, order=(1, 2, 0))
        glue_turn = 2 - (F(1, 2) if e2 > 0 else F(3, 2))
        for torus in tori:
            torus_sig = block_signature(torus)
            torus_piece = Piece.of_block(torus, torus_sig)
            rest = m - pants_sig - torus_sig
            if n == 2:
                if rest == 0:
                    return Piece.of_chain([pants_piece, torus_piece])
                continue
            try:
                turns = solve_turns([glue_turn], n - 1, rest)
            except UnachievableValue:
                continue
            core = _core(turns, rest, n - 1)
            return Piece.of_chain([core, pants_piece, torus_piece])
    return None


def _plan_elliptic(t: PlanTarget) -> tuple[str, Piece]:
    g, n, m = t.genus, t.boundaries, t.m
    if g == 0:
        return "so2-elliptic", Piece.of_turns(0, so2_turns(n, m, elliptic=True), m)
    if (m - 2 * n) % 4:
        raise PlanIncomplete(
            f"{t}: boundary-elliptic assemblies reach only m = 2n (mod 4); this target is a "
            "parity obstruction for every available route."
        )
    if (g, n) == (1, 1):
        return "torus-elliptic", _leaf(F(3, 2) if m > 0 else F(1, 2), m)
    piece = _central_handle(n, g, m)
    if piece is not None:
        return "central-inversion", piece
    piece = _cone(n, g, m, allow_identity=False)
    if piece is not None:
        return "cone", piece
    raise PlanIncomplete(f"No boundary-elliptic assembly found for {t}.")


def _plan_direct_sum(t: PlanTarget) -> AssemblyPlan:
    g, n, m = t.genus, t.boundaries, t.m
    block_cap = -2 * t.chi
    if t.family == ValueFamily.MAIN_SP:
        values = split_factors(m, [1] * t.p, block_cap)
        parts = tuple(plan(PlanTarget(ValueFamily.HYPERPARABOLIC, g, n, v)) for v in values)
        return AssemblyPlan(target=t, route="sp-sum", parts=parts)

    r = t.q - t.p
    m1 = max(-t.p * block_cap, min(t.p * block_cap, m))
    values = split_factors(m1, [1] * t.p, block_cap)
    parts = tuple(plan(PlanTarget(ValueFamily.HYPERPARABOLIC, g, n, v)) for v in values)
    recipe = None
    if r:
        recipe = UnitaryRecipe(builder="negative_part", genus=g, boundaries=n, p=r, m=m - m1)
    elif m != m1:
        raise UnachievableValue(f"{t}: |m| exceeds 2p|chi|.")
    return AssemblyPlan(target=t, route="upp-sum", parts=parts, unitary=recipe)


def plan(target: PlanTarget) -> AssemblyPlan:
    """
    Choose a construction for the target. Values outside the family's value set raise
    UnachievableValue; values inside it that no available route reaches raise PlanIncomplete.
    """
    t = target
    try:
        values = value_set(t.value_spec)
    except UnsupportedSurface as e:
        raise UnachievableValue(str(e)) from e
    if t.m not in values:
        raise UnachievableValue(f"{t.m} is not in the value set of {t}: {values}.")

    family = ValueFamily(t.family)
    if family == ValueFamily.UP:
        recipe = UnitaryRecipe(builder="up", genus=t.genus, boundaries=t.boundaries, p=t.p, m=t.m)
        return AssemblyPlan(target=t, route="up", unitary=recipe)
    if family == ValueFamily.UPQ_GENUS0:
        recipe = UnitaryRecipe(
            builder="upq_genus0", genus=0, boundaries=t.boundaries, p=t.p, q=t.q, m=t.m
        )
        return AssemblyPlan(target=t, route="upq-genus0", unitary=recipe)
    if family in (ValueFamily.MAIN_SP, ValueFamily.UPP_TIMES):
        return _plan_direct_sum(t)
    if family in (ValueFamily.SO2, ValueFamily.SO2_ELLIPTIC):
        elliptic = family == ValueFamily.SO2_ELLIPTIC
        turns = so2_turns(t.boundaries, t.m, elliptic=elliptic)
        return AssemblyPlan(
            target=t, route=family.value, root=Piece.of_turns(t.genus, turns, t.m)
        )

    routes = {
        ValueFamily.PARAELLIPTIC: _plan_paraelliptic,
        ValueFamily.HYPERPARABOLIC: _plan_hyperparabolic,
        ValueFamily.ELLIPTIC: _plan_elliptic,
    }
    route, root = routes[family](t)
    logger.info(f"{t}: route {route}")
    return AssemblyPlan(target=t, route=route, root=root)


# ==========================================
# EXECUTION
# ==========================================


def build_piece(piece: Piece) -> Representation:
    if piece.kind == PieceKind.BLOCK:
        rep = block_rep(piece.block)
    elif piece.kind == PieceKind.ROTATION:
        rep = rotation_rep(piece.genus, piece.turns)
    else:
        rep = build_piece(piece.chain[0])
        for part in piece.chain[1:]:
            rep = glue(rep, rep.n - 1, build_piece(part), 0)
    if piece.order:
        rep = reorder_boundaries(rep, piece.order)
    return rep


def _build_unitary(recipe: UnitaryRecipe) -> Representation:
    if recipe.builder == "up":
        return up_rep(recipe.genus, recipe.boundaries, recipe.p, recipe.m)
    if recipe.builder == "upq_genus0":
        return upq_genus0_rep(recipe.boundaries, recipe.p, recipe.q, recipe.m)
    return negative_part_rep(recipe.genus, recipe.boundaries, recipe.p, recipe.m)


def check_boundary_mode(rep: Representation, family: ValueFamily):
    """Raise VerificationFailure when a boundary class leaves the family's allowed kinds."""
    if not rep.is_sl2:
        return
    kinds = [c.kind for c in rep.boundary_classes]
    bad = None
    if family == ValueFamily.PARAELLIPTIC:
        bad = [k for k in kinds if k == ConjKind.HYPERBOLIC]
        traces = [abs(tr) for tr in rep.boundary_traces()]
        if max(traces) > 2 + 1e-9:
            bad = bad or ["|trace| > 2"]
    elif family == ValueFamily.HYPERPARABOLIC:
        allowed = (ConjKind.HYPERBOLIC, ConjKind.PAR_POS, ConjKind.PAR_NEG)
        bad = [k for k in kinds if k not in allowed]
    elif family in (ValueFamily.ELLIPTIC, ValueFamily.SO2_ELLIPTIC):
        bad = [k for k in kinds if k != ConjKind.ELLIPTIC]
    if bad:
        raise VerificationFailure(f"Boundary classes {kinds} violate the {family.value} mode.")


def execute(assembly: AssemblyPlan) -> Representation:
    """Build the planned representation and certify its signature against the target."""
    t = assembly.target
    if assembly.parts:
        parts = [execute(p) for p in assembly.parts]
        rest = _build_unitary(assembly.unitary) if assembly.unitary is not None else None
        rep = direct_sum_rep(parts, rest=rest)
    elif assembly.unitary is not None:
        rep = _build_unitary(assembly.unitary)
    else:
        rep = build_piece(assembly.root)

    sig = signature_of(rep).signature_formula
    if sig != t.m:
        raise VerificationFailure(f"{t}: executed plan has signature {sig}.")
    check_boundary_mode(rep, ValueFamily(t.family))
    return rep


def realize(target: PlanTarget) -> Representation:
    return execute(plan(target))


def sp_rep(genus: int, boundaries: int, p: int, m: int) -> Representation:
    """Sp(2p,R) representation as a direct sum of p SL(2,R) assemblies."""
    return realize(PlanTarget(ValueFamily.MAIN_SP, genus, boundaries, m, p=p))


def upp_rep(genus: int, boundaries: int, p: int, q: int, m: int) -> Representation:
    """
    U(p,p) x U(q-p): p SL(2,R) blocks in SU(p,p) plus a compact U(q-p) factor in the negative
    part.
    """
    return realize(PlanTarget(ValueFamily.UPP_TIMES, genus, boundaries, m, p=p, q=q))
