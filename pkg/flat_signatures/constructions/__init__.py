from .models import AssemblyPlan, Piece, PieceKind, PlanTarget, UnitaryRecipe
from .planner import (
    build_piece,
    check_boundary_mode,
    execute,
    plan,
    realize,
    sp_rep,
    upp_rep,
)
from .so2 import rotation_rep, rotation_signature, so2_rep, so2_turns, solve_turns
from .spine import spine_plan
from .unitary import negative_part_rep, up_rep, upq_genus0_rep

__all__ = [
    "AssemblyPlan",
    "Piece",
    "PieceKind",
    "PlanTarget",
    "UnitaryRecipe",
    "build_piece",
    "check_boundary_mode",
    "execute",
    "plan",
    "realize",
    "sp_rep",
    "upp_rep",
    "rotation_rep",
    "rotation_signature",
    "so2_rep",
    "so2_turns",
    "solve_turns",
    "spine_plan",
    "negative_part_rep",
    "up_rep",
    "upq_genus0_rep",
]
