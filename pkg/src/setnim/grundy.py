"""Brute-force ground truth: Grundy values, outcomes and box sweeps.

Everything here is independent of the closed-form oracles so it can be
used to verify them.  Single positions go through a memoized engine with
an explicit work stack (token totals can be large, so no recursion); whole
boxes ``[0, bound]^n`` go through a vectorized retrograde sweep.
"""

from __future__ import annotations

import pickle
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetExceededError
from .games import (
    GameSpec,
    Move,
    Outcome,
    Position,
    apply_move,
    apply_perm,
    check_position,
    is_legal_move,
    legal_moves,
    symmetries,
)

DEFAULT_BUDGET = 10**8
DEFAULT_MAX_STATES = 1 << 24
REPORT_CAP = 20


def mex(values) -> int:
    m = 0
    vs = set(values)
    while m in vs:
        m += 1
    return m


class _Frame:
    __slots__ = ("pos", "moves", "values", "pending")

    def __init__(self, pos, moves):
        self.pos = pos
        self.moves = moves
        self.values = set()
        self.pending = None


class GrundyEngine:
    """Memoized Grundy/outcome computation for one game.

    The budget caps the number of option evaluations; hitting it raises
    cleanly and never returns a wrong answer.  ``canonicalize=True`` keys
    the memo on the minimum over the game's symmetry group, which may only
    shrink the cache, never change results.
    """

    def __init__(self, spec: GameSpec, budget: int = DEFAULT_BUDGET, canonicalize: bool = False):
        self.spec = spec
        self.budget = budget
        self.evaluations = 0
        self._grundy: dict[Position, int] = {}
        self._is_p: dict[Position, bool] = {}
        self._group = symmetries(spec) if canonicalize else None

    def _key(self, pos: Position) -> Position:
        if self._group is None:
            return pos
        return min(apply_perm(s, pos) for s in self._group)

    def _charge(self) -> None:
        self.evaluations += 1
        if self.evaluations > self.budget:
            raise BudgetExceededError(
                f"option-evaluation budget of {self.budget} exhausted"
            )

    def grundy(self, pos: Sequence[int]) -> int:
        root = self._key(check_position(self.spec, pos))
        memo = self._grundy
        if root in memo:
            return memo[root]
        stack = [_Frame(root, legal_moves(self.spec, root))]
        while stack:
            frame = stack[-1]
            if frame.pending is not None:
                frame.values.add(memo[frame.pending])
                frame.pending = None
            for mv in frame.moves:
                self._charge()
                child = self._key(apply_move(frame.pos, mv))
                val = memo.get(child)
                if val is None:
                    frame.pending = child
                    stack.append(_Frame(child, legal_moves(self.spec, child)))
                    break
                frame.values.add(val)
            else:
                memo[frame.pos] = mex(frame.values)
                stack.pop()
        return memo[root]

    def is_p(self, pos: Sequence[int]) -> bool:
        """Outcome with short-circuiting: N as soon as one P option shows up."""
        root = self._key(check_position(self.spec, pos))
        memo = self._is_p
        if root in memo:
            return memo[root]
        stack = [_Frame(root, legal_moves(self.spec, root))]
        while stack:
            frame = stack[-1]
            if frame.pending is not None:
                if memo[frame.pending]:
                    memo[frame.pos] = False
                    stack.pop()
                    continue
                frame.pending = None
            done = True
            for mv in frame.moves:
                self._charge()
                child = self._key(apply_move(frame.pos, mv))
                val = memo.get(child)
                if val is None:
                    frame.pending = child
                    stack.append(_Frame(child, legal_moves(self.spec, child)))
                    done = False
                    break
                if val:
                    memo[frame.pos] = False
                    stack.pop()
                    done = False
                    break
            if done:
                memo[frame.pos] = True
                stack.pop()
        return memo[root]

    def outcome(self, pos: Sequence[int]) -> Outcome:
        return Outcome.P if self.is_p(pos) else Outcome.N

    def winning_move(self, pos: Sequence[int]) -> Move | None:
        """First legal move (canonical order) into a P option; None at P positions."""
        pos = check_position(self.spec, pos)
        for mv in legal_moves(self.spec, pos):
            self._charge()
            if self.is_p(apply_move(pos, mv)):
                return mv
        return None


def grundy(spec: GameSpec, pos: Sequence[int], budget: int = DEFAULT_BUDGET) -> int:
    return GrundyEngine(spec, budget).grundy(pos)


def outcome(spec: GameSpec, pos: Sequence[int], budget: int = DEFAULT_BUDGET) -> Outcome:
    return GrundyEngine(spec, budget).outcome(pos)


def brute_winning_move(
    spec: GameSpec, pos: Sequence[int], budget: int = DEFAULT_BUDGET
) -> Move | None:
    return GrundyEngine(spec, budget).winning_move(pos)


def _box_matrix(n: int, bound: int) -> np.ndarray:
    """All box positions as an ``((bound+1)^n, n)`` int matrix, lexicographic."""
    grids = np.indices((bound + 1,) * n)
    return grids.reshape(n, -1).T.astype(np.int64)


def p_table(spec: GameSpec, bound: int, max_states: int = DEFAULT_MAX_STATES) -> np.ndarray:
    """Boolean array over ``[0, bound]^n``: True where the position is P.

    Retrograde sweep by token total.  For each move set, a running prefix-OR
    over its axes marks every position that can reach a known P position
    inside that set's sublattice; a position is P exactly when no move set
    can reach one.
    """
    n = spec.n
    states = (bound + 1) ** n
    if states > max_states:
        raise BudgetExceededError(
            f"box has {states} states, over the cap of {max_states}"
        )
    shape = (bound + 1,) * n
    total = np.zeros(shape, dtype=np.int32)
    for ax in range(n):
        idx = np.arange(bound + 1, dtype=np.int32).reshape(
            (1,) * ax + (-1,) + (1,) * (n - ax - 1)
        )
        total = total + idx
    is_p = np.zeros(shape, dtype=bool)
    is_p[(0,) * n] = True
    reach = np.empty(shape, dtype=bool)
    for s in range(1, n * bound + 1):
        level = total == s
        if not level.any():
            break
        reach[...] = False
        for a in spec.move_sets:
            d = is_p.copy()
            for ax in a:
                np.logical_or.accumulate(d, axis=ax, out=d)
            np.logical_or(reach, d, out=reach)
        is_p[level] = ~reach[level]
    return is_p


def p_positions(
    spec: GameSpec, bound: int, max_states: int = DEFAULT_MAX_STATES
) -> set[Position]:
    """All P positions inside the box ``[0, bound]^n``."""
    table = p_table(spec, bound, max_states)
    return {tuple(int(v) for v in row) for row in np.argwhere(table)}


@dataclass
class VerificationReport:
    """Result of sweeping an oracle against brute force over a box."""

    game_id: str
    bound: int
    positions_checked: int
    outcome_mismatches: list[Position] = field(default_factory=list)
    closure_violations: list[tuple[Position, Move, Position]] = field(default_factory=list)
    reachability_violations: list[Position] = field(default_factory=list)
    truncated: bool = False

    @property
    def ok(self) -> bool:
        return not (
            self.outcome_mismatches
            or self.closure_violations
            or self.reachability_violations
        )

    def to_payload(self) -> dict:
        return {
            "game": self.game_id,
            "bound": self.bound,
            "positions_checked": self.positions_checked,
            "outcome_mismatches": [list(p) for p in self.outcome_mismatches],
            "closure_violations": [
                {"position": list(p), "move": list(m), "option": list(o)}
                for p, m, o in self.closure_violations
            ],
            "reachability_violations": [list(p) for p in self.reachability_violations],
            "truncated": self.truncated,
            "ok": self.ok,
        }

    def summary(self) -> str:
        return (
            f"{len(self.outcome_mismatches)} mismatches, "
            f"{len(self.closure_violations)} closure violations, "
            f"{len(self.reachability_violations)} reachability violations"
        )


def _membership_array(membership, membership_batch, matrix: np.ndarray) -> np.ndarray:
    if membership_batch is not None:
        out = np.asarray(membership_batch(matrix), dtype=bool)
        if out.shape != (matrix.shape[0],):
            raise ValueError("membership batch returned a wrong shape")
        return out
    return np.fromiter(
        (bool(membership(tuple(int(v) for v in row))) for row in matrix),
        dtype=bool,
        count=matrix.shape[0],
    )


def _strict_reach(member: np.ndarray, move_set: Sequence[int]) -> np.ndarray:
    """True where some strictly smaller position in the set's sublattice is a member."""
    inc = member.copy()
    for ax in move_set:
        np.logical_or.accumulate(inc, axis=ax, out=inc)
    out = np.zeros_like(member)
    for ax in move_set:
        src = [slice(None)] * member.ndim
        dst = [slice(None)] * member.ndim
        src[ax] = slice(None, -1)
        dst[ax] = slice(1, None)
        np.logical_or(out[tuple(dst)], inc[tuple(src)], out=out[tuple(dst)])
    return out


def _check_chunk(spec, membership, move_fn, rows):
    bad = []
    for row in rows:
        pos = tuple(int(v) for v in row)
        mv = move_fn(pos)
        if mv is None:
            bad.append(pos)
            continue
        legal, _ = is_legal_move(spec, pos, mv)
        if not legal or not membership(apply_move(pos, mv)):
            bad.append(pos)
    return bad


def verify_oracle(
    spec: GameSpec,
    membership: Callable[[Position], bool],
    move_fn: Callable[[Position], Move | None] | None,
    bound: int,
    *,
    membership_batch: Callable[[np.ndarray], np.ndarray] | None = None,
    threads: int = 1,
    cap: int = REPORT_CAP,
    max_states: int = DEFAULT_MAX_STATES,
) -> VerificationReport:
    """Exhaustively check an oracle on ``[0, bound]^n``.

    Three checks: (i) membership agrees with the brute-force outcome on
    every box position; (ii) closure: no legal move joins two membership-P
    positions (this uses the membership predicate for options, which stays
    valid off any box); (iii) when ``move_fn`` is given, it supplies a legal
    move into membership-P from every membership-N position.
    """
    n = spec.n
    table = p_table(spec, bound, max_states)
    matrix = _box_matrix(n, bound)
    member_flat = _membership_array(membership, membership_batch, matrix)
    member = member_flat.reshape(table.shape)

    report = VerificationReport(
        game_id=spec.id, bound=bound, positions_checked=matrix.shape[0]
    )

    mismatch = member != table
    if mismatch.any():
        rows = np.argwhere(mismatch)
        report.truncated = report.truncated or len(rows) > cap
        report.outcome_mismatches = [
            tuple(int(v) for v in r) for r in rows[:cap]
        ]

    closure_bad = np.zeros_like(member)
    for a in spec.move_sets:
        np.logical_or(closure_bad, member & _strict_reach(member, a), out=closure_bad)
    if closure_bad.any():
        rows = np.argwhere(closure_bad)
        report.truncated = report.truncated or len(rows) > cap
        for r in rows[:cap]:
            pos = tuple(int(v) for v in r)
            for mv in legal_moves(spec, pos):
                opt = apply_move(pos, mv)
                if membership(opt):
                    report.closure_violations.append((pos, mv, opt))
                    break

    if move_fn is not None:
        n_rows = matrix[~member_flat]
        chunks = None
        if threads > 1:
            try:
                pickle.dumps((membership, move_fn))
                chunks = [
                    n_rows[n_rows[:, 0] == lead] for lead in range(bound + 1)
                ]
            except Exception:
                chunks = None
        bad: list[Position] = []
        if chunks is not None:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                futures = [
                    pool.submit(_check_chunk, spec, membership, move_fn, chunk)
                    for chunk in chunks
                    if len(chunk)
                ]
                for fut in futures:
                    bad.extend(fut.result())
            bad.sort()
        else:
            bad = _check_chunk(spec, membership, move_fn, n_rows)
        report.truncated = report.truncated or len(bad) > cap
        report.reachability_violations = bad[:cap]

    return report
