"""Solver workbench for SetNim-family take-away games."""

from .errors import SetNimError
from .games import (
    GameSpec,
    Move,
    Outcome,
    Position,
    apply_move,
    build_game,
    builtin_game,
    is_legal_move,
    legal_moves,
    symmetries,
)
from .grundy import (
    GrundyEngine,
    VerificationReport,
    brute_winning_move,
    grundy,
    outcome,
    p_positions,
    verify_oracle,
)
from .invariance import (
    InvariantVector,
    combo_membership,
    discover_invariants,
    indicator_min,
    invariance_reduce,
    is_invariant_bounded,
    move_via_reduction,
)
from .oracles import (
    SolveResult,
    SquareDecomposition,
    move_base,
    move_cn73,
    move_cn83,
    move_h,
    move_path,
    oracle_for,
    p_membership_base,
    p_membership_cn73,
    p_membership_cn83,
    p_membership_h,
    p_membership_path,
    solve,
)
from .reduction import (
    ReductionTrace,
    TraceBuilder,
    lift_move,
    merge_reduce,
    mergeable_classes,
    project,
    zero_reduce,
)
from .simplicial import circuits, pointed_p_membership, points_of

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
