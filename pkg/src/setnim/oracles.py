"""Closed-form P-position tests and constructive winning moves.

Each solved game gets a membership predicate (scalar for play, vectorized
for box sweeps) and, where a constructive procedure exists, a move function
that reduces to a smaller solved game and lifts the answer back.  Cyclic
games treat positions up to rotation and reflection, so membership scans
the dihedral images rather than normalizing to a canonical form.

Everything funnels through :func:`solve`, which dispatches on game id and
falls back to brute force for games without an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable, Sequence

import numpy as np

from .errors import (
    BadParametersError,
    DimensionMismatchError,
    NoCaseMatchedError,
    UnsupportedGameError,
    UnsupportedParametersError,
)
from .games import (
    GameSpec,
    Move,
    Outcome,
    Position,
    apply_move,
    builtin_game,
    check_position,
    dihedral_index_maps,
    inverse_perm,
    support,
)
from .grundy import DEFAULT_BUDGET, GrundyEngine
from .invariance import MoveCase, classify_case, invariance_reduce, move_via_reduction
from .reduction import ReductionTrace, TraceBuilder


def _check_len(pos: Sequence[int], n: int) -> Position:
    pos = tuple(pos)
    if len(pos) != n:
        raise DimensionMismatchError(f"expected {n} stacks, got {len(pos)}")
    return pos


@lru_cache(maxsize=None)
def _maps(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(dihedral_index_maps(n))


@lru_cache(maxsize=None)
def _spec(game_id: str) -> GameSpec:
    return builtin_game(game_id)


# ---------------------------------------------------------------------------
# Scalar membership predicates
# ---------------------------------------------------------------------------

def _cn32_member(pos) -> bool:
    return pos[0] == pos[1] == pos[2]


def _cn42_member(pos) -> bool:
    return pos[0] == pos[2] and pos[1] == pos[3]


def _cn52_member(pos) -> bool:
    # Some image reads (M, m, c, d, m) with M the maximum and M + m = c + d.
    mx = max(pos)
    for m in _maps(5):
        if (
            pos[m[0]] == mx
            and pos[m[1]] == pos[m[4]]
            and mx + pos[m[1]] == pos[m[2]] + pos[m[3]]
        ):
            return True
    return False


def _cn53_member(pos) -> bool:
    for m in _maps(5):
        if pos[m[0]] == 0 and pos[m[1]] == pos[m[4]] and pos[m[1]] == pos[m[2]] + pos[m[3]]:
            return True
    return False


def _cn63_member(pos) -> bool:
    # Both balance equations are rotation/reflection stable, no image scan.
    return pos[0] + pos[1] == pos[3] + pos[4] and pos[1] + pos[2] == pos[4] + pos[5]


def _cn74_member(pos) -> bool:
    if min(pos) == max(pos):
        return True
    for m in _maps(7):
        a, b, c, d, e, f, g = (pos[i] for i in m)
        if a == b == 0 and c == g > 0 and d + e + f == c:
            return True
        if a == b and c == g and d == f and a + c == d + e and 0 < a < e:
            return True
        if (
            a == f
            and b + c == d + e == g + a
            and a < min(b, e)
            and a < max(c, d)
        ):
            return True
    return False


def _h_halves(a, b, c, d, e, f) -> bool:
    return a <= f and a + b + c == d + e + f and a == d + min(c, e)


def _h_member(pos) -> bool:
    a, b, c, d, e, f = pos
    return _h_halves(a, b, c, d, e, f) or _h_halves(f, e, d, c, b, a)


def _cn73_member(pos) -> bool:
    mn = min(pos)
    for m in _maps(7):
        a, b, c, d, e, f, g = (pos[i] for i in m)
        if a == mn and b <= g and a + b == e + min(d, f) and b + c + d == e + f + g:
            return True
    return False


def _cn83_member(pos) -> bool:
    for m in _maps(8):
        q = [pos[i] for i in m]
        a = min(q[0], q[2], q[4], q[6])
        b = min(q[1], q[3], q[5], q[7])
        if q[0] != a or q[3] != b:
            continue
        five = (q[1] - b, q[2] - a, q[4] - a, (q[5] - b) + (q[6] - a), q[7] - b)
        if _cn52_member(five):
            return True
    return False


def _pn_member(n: int, k: int, pos) -> bool:
    if 2 * k < n:
        raise UnsupportedParametersError(
            f"pn:{n},{k}: closed form needs play on at least half the stacks"
        )
    if k == n:
        return not any(pos)
    for s in range(1, n - k + 1):
        if any(pos[s:s + k - 1]):
            continue
        if sum(pos[:s]) == sum(pos[s + k - 1:]):
            return True
    return False


# ---------------------------------------------------------------------------
# Vectorized membership over (count, n) integer matrices
# ---------------------------------------------------------------------------

def _dihedral_any(P: np.ndarray, cond) -> np.ndarray:
    ok = np.zeros(len(P), dtype=bool)
    for m in _maps(P.shape[1]):
        ok |= cond(P[:, list(m)])
    return ok


def _cn32_batch(P):
    return (P[:, 0] == P[:, 1]) & (P[:, 1] == P[:, 2])


def _cn42_batch(P):
    return (P[:, 0] == P[:, 2]) & (P[:, 1] == P[:, 3])


def _cn52_cond(Q):
    return (
        (Q[:, 0] == Q.max(axis=1))
        & (Q[:, 1] == Q[:, 4])
        & (Q[:, 0] + Q[:, 1] == Q[:, 2] + Q[:, 3])
    )


def _cn52_batch(P):
    return _dihedral_any(P, _cn52_cond)


def _cn53_cond(Q):
    return (Q[:, 0] == 0) & (Q[:, 1] == Q[:, 4]) & (Q[:, 1] == Q[:, 2] + Q[:, 3])


def _cn53_batch(P):
    return _dihedral_any(P, _cn53_cond)


def _cn63_batch(P):
    return (P[:, 0] + P[:, 1] == P[:, 3] + P[:, 4]) & (P[:, 1] + P[:, 2] == P[:, 4] + P[:, 5])


def _cn74_cond(Q):
    a, b, c, d, e, f, g = (Q[:, i] for i in range(7))
    s1 = (a == 0) & (b == 0) & (c == g) & (c > 0) & (d + e + f == c)
    s2 = (Q.max(axis=1) == Q.min(axis=1))
    s3 = (a == b) & (c == g) & (d == f) & (a + c == d + e) & (a > 0) & (a < e)
    s4 = (
        (a == f)
        & (b + c == d + e)
        & (d + e == g + a)
        & (a < np.minimum(b, e))
        & (a < np.maximum(c, d))
    )
    return s1 | s2 | s3 | s4


def _cn74_batch(P):
    return _dihedral_any(P, _cn74_cond)


def _h_cond(Q):
    return (
        (Q[:, 0] <= Q[:, 5])
        & (Q[:, 0] + Q[:, 1] + Q[:, 2] == Q[:, 3] + Q[:, 4] + Q[:, 5])
        & (Q[:, 0] == Q[:, 3] + np.minimum(Q[:, 2], Q[:, 4]))
    )


def _h_batch(P):
    return _h_cond(P) | _h_cond(P[:, ::-1])


def _cn73_cond(Q):
    return (
        (Q[:, 0] == Q.min(axis=1))
        & (Q[:, 1] <= Q[:, 6])
        & (Q[:, 0] + Q[:, 1] == Q[:, 4] + np.minimum(Q[:, 3], Q[:, 5]))
        & (Q[:, 1] + Q[:, 2] + Q[:, 3] == Q[:, 4] + Q[:, 5] + Q[:, 6])
    )


def _cn73_batch(P):
    return _dihedral_any(P, _cn73_cond)


def _cn83_cond(Q):
    a = Q[:, (0, 2, 4, 6)].min(axis=1)
    b = Q[:, (1, 3, 5, 7)].min(axis=1)
    anchored = (Q[:, 0] == a) & (Q[:, 3] == b)
    five = np.stack(
        [Q[:, 1] - b, Q[:, 2] - a, Q[:, 4] - a, Q[:, 5] - b + Q[:, 6] - a, Q[:, 7] - b],
        axis=1,
    )
    return anchored & _cn52_batch(five)


def _cn83_batch(P):
    return _dihedral_any(P, _cn83_cond)


def _pn_batch(n: int, k: int, P):
    if 2 * k < n:
        raise UnsupportedParametersError(
            f"pn:{n},{k}: closed form needs play on at least half the stacks"
        )
    if k == n:
        return ~P.any(axis=1)
    ok = np.zeros(len(P), dtype=bool)
    for s in range(1, n - k + 1):
        window_empty = ~P[:, s:s + k - 1].any(axis=1)
        ok |= window_empty & (P[:, :s].sum(axis=1) == P[:, s + k - 1:].sum(axis=1))
    return ok


# ---------------------------------------------------------------------------
# Public membership operations
# ---------------------------------------------------------------------------

BASE_GAMES = ("cn:3,2", "cn:4,2", "cn:5,2", "cn:5,3", "cn:6,3", "cn:7,4")

_BASE_MEMBERS = {
    "cn:3,2": _cn32_member,
    "cn:4,2": _cn42_member,
    "cn:5,2": _cn52_member,
    "cn:5,3": _cn53_member,
    "cn:6,3": _cn63_member,
    "cn:7,4": _cn74_member,
}


def p_membership_base(game: str, pos: Sequence[int]) -> bool:
    """Closed-form membership for the six previously solved cyclic games."""
    if game not in _BASE_MEMBERS:
        raise UnsupportedGameError(f"no base oracle for {game!r}")
    pos = _check_len(pos, _spec(game).n)
    return _BASE_MEMBERS[game](pos)


def p_membership_path(n: int, k: int, pos: Sequence[int]) -> bool:
    """Path-game membership: a k-1 run of zeros splitting equal sums."""
    pos = _check_len(pos, n)
    return _pn_member(n, k, pos)


def p_membership_h(pos: Sequence[int]) -> bool:
    pos = _check_len(pos, 6)
    return _h_member(pos)


def p_membership_cn73(pos: Sequence[int]) -> bool:
    pos = _check_len(pos, 7)
    return _cn73_member(pos)


def p_membership_cn83(pos: Sequence[int]) -> bool:
    pos = _check_len(pos, 8)
    return _cn83_member(pos)


@dataclass(frozen=True)
class SquareDecomposition:
    """An 8-cycle position split into its two alternating squares.

    ``a``/``b`` are the minima over the even/odd stacks and ``x`` holds the
    excesses of stacks 1..7 above their square minimum; stack 0 must sit at
    the even minimum so the labeling is anchored.
    """

    a: int
    b: int
    x: tuple[int, ...]

    @classmethod
    def from_position(cls, pos: Sequence[int]) -> "SquareDecomposition":
        pos = _check_len(pos, 8)
        a = min(pos[0], pos[2], pos[4], pos[6])
        b = min(pos[1], pos[3], pos[5], pos[7])
        if pos[0] != a:
            raise BadParametersError("stack 0 must carry the even-square minimum")
        x = tuple(pos[i] - (a if i % 2 == 0 else b) for i in range(1, 8))
        return cls(a=a, b=b, x=x)

    def reconstruct(self) -> Position:
        heights = [self.a]
        for i, xi in enumerate(self.x, start=1):
            heights.append((self.a if i % 2 == 0 else self.b) + xi)
        return tuple(heights)

    def reduced_five(self) -> Position:
        x1, x2, _, x4, x5, x6, x7 = self.x
        return (x1, x2, x4, x5 + x6, x7)


# ---------------------------------------------------------------------------
# Constructive moves
# ---------------------------------------------------------------------------

def move_path(n: int, k: int, pos: Sequence[int]) -> Move | None:
    """Winning move for a path game with play on at least half the stacks.

    None at P positions.  Otherwise: equalize around an existing zero run,
    or cut a fresh run where the left/right sums L(i), R(i) balance, or
    handle the three end/crossover arrangements of the sums.
    """
    pos = _check_len(pos, n)
    if _pn_member(n, k, pos):
        return None
    if k == n:
        return pos
    mv = [0] * n
    # An interior run of k-1 zeros already exists: equalize the two sides.
    for s in range(1, n - k + 1):
        if any(pos[s:s + k - 1]):
            continue
        left = sum(pos[:s])
        right = sum(pos[s + k - 1:])
        if left > right:
            lo, hi, excess = 0, s, left - right
        else:
            lo, hi, excess = s + k - 1, n, right - left
        for i in range(lo, hi):
            take = min(excess, pos[i])
            mv[i] = take
            excess -= take
            if not excess:
                break
        return tuple(mv)

    def lsum(i):
        return sum(pos[:i])

    def rsum(i):
        return sum(pos[i + k - 1:])

    # A balanced split exists: empty the k-1 stacks between its sides.
    for i in range(1, n - k + 1):
        if lsum(i) == rsum(i):
            for j in range(i, i + k - 1):
                mv[j] = pos[j]
            return tuple(mv)
    if lsum(1) > rsum(1):
        mv[0] = pos[0] - rsum(1)
        for j in range(1, k):
            mv[j] = pos[j]
        return tuple(mv)
    if lsum(n - k) < rsum(n - k):
        for j in range(n - k, n - 1):
            mv[j] = pos[j]
        mv[n - 1] = pos[n - 1] - lsum(n - k)
        return tuple(mv)
    # Sums cross somewhere in the middle: find the crossover index.
    for i in range(1, n - k):
        if lsum(i) < rsum(i) and lsum(i + 1) > rsum(i + 1):
            for j in range(i + 1, i + k - 1):
                mv[j] = pos[j]
            li, ri1 = lsum(i), rsum(i + 1)
            if li < ri1:
                mv[i] = pos[i] - (ri1 - li)
                mv[i + k - 1] = pos[i + k - 1]
            elif li > ri1:
                mv[i] = pos[i]
                mv[i + k - 1] = pos[i + k - 1] - (li - ri1)
            else:
                mv[i] = pos[i]
                mv[i + k - 1] = pos[i + k - 1]
            return tuple(mv)
    raise NoCaseMatchedError(f"pn:{n},{k}: sum crossover not found at {pos}")


def _pn_solver(n: int, k: int):
    return partial(move_path, n, k)


def _move_cn32(pos) -> Move | None:
    pos = _check_len(pos, 3)
    if _cn32_member(pos):
        return None
    mn = min(pos)
    return tuple(p - mn for p in pos)


def _move_cn42(pos) -> Move | None:
    pos = _check_len(pos, 4)
    if _cn42_member(pos):
        return None
    mv = [0] * 4
    for i, j in ((0, 2), (1, 3)):
        if pos[i] > pos[j]:
            mv[i] = pos[i] - pos[j]
        elif pos[j] > pos[i]:
            mv[j] = pos[j] - pos[i]
    return tuple(mv)


def _always(_pos) -> bool:
    return True


def _rotation_to_front(t: Position, j: int) -> tuple[int, ...]:
    n = len(t)
    return tuple((i - j) % n for i in range(n))


# --- cn:5,2: one flat invariant, then a path game on the rest ---

_CN52_SCHEDULE = ((1, 1, 1, 1, 1),)


def _build_cn52(builder: TraceBuilder):
    builder.apply_symmetry(_rotation_to_front(builder.position, builder.position.index(0)))
    builder.remove_zeros([0])
    return _pn_solver(4, 2)


_CN52_CASES = (MoveCase("zero-front", "1", _always, _build_cn52),)


# --- cn:6,3: opposite-pair and alternating invariants leave one window ---

_CN63_SCHEDULE = (
    (1, 0, 0, 1, 0, 0),
    (0, 1, 0, 0, 1, 0),
    (0, 0, 1, 0, 0, 1),
    (1, 0, 1, 0, 1, 0),
    (0, 1, 0, 1, 0, 1),
)


def _build_cn63(builder: TraceBuilder):
    spec = builder.spec

    def solver(t: Position) -> Move | None:
        if not any(t):
            return None
        if spec.is_face(support(t)):
            return t
        raise NoCaseMatchedError(f"cn:6,3: residual {t} spans no move window")

    return solver


_CN63_CASES = (MoveCase("residual", "1", _always, _build_cn63),)


# --- game h: two interleaved invariants, four zero patterns ---

H_INVARIANTS = ((1, 1, 0, 1, 0, 1), (1, 0, 1, 0, 1, 1))
_H_REFLECT = (5, 4, 3, 2, 1, 0)


def _h_match_1(t):
    return t[0] == 0


def _h_match_1r(t):
    return t[5] == 0


def _h_match_2a(t):
    return t[1] == 0 and t[2] == 0


def _h_match_2b(t):
    return t[3] == 0 and t[4] == 0


def _h_match_3(t):
    return t[2] == 0 and t[3] == 0


def _h_match_4(t):
    return t[1] == 0 and t[4] == 0


def _h_build_1(b: TraceBuilder):
    b.remove_zeros([0])
    return _pn_solver(5, 3)


def _h_build_1r(b: TraceBuilder):
    b.apply_symmetry(_H_REFLECT)
    b.remove_zeros([0])
    return _pn_solver(5, 3)


def _h_build_2a(b: TraceBuilder):
    b.remove_zeros([1, 2])
    b.merge([1, 2])
    b.apply_symmetry((0, 2, 1))  # order (a, f, d+e) along the path
    return _pn_solver(3, 2)


def _h_build_2b(b: TraceBuilder):
    b.remove_zeros([3, 4])
    b.merge([1, 2])
    b.apply_symmetry((1, 0, 2))  # order (b+c, a, f) along the path
    return _pn_solver(3, 2)


def _h_build_3(b: TraceBuilder):
    b.remove_zeros([2, 3])
    b.apply_symmetry((1, 0, 3, 2))  # order (b, a, f, e) along the path
    return _pn_solver(4, 2)


def _h_build_4(b: TraceBuilder):
    b.remove_zeros([1, 4])  # survivors (a, c, d, f) already form the 4-cycle
    return _move_cn42


H_CASES = (
    MoveCase("1", "1", _h_match_1, _h_build_1),
    MoveCase("1r", "1", _h_match_1r, _h_build_1r),
    MoveCase("2a", "2", _h_match_2a, _h_build_2a),
    MoveCase("2b", "2", _h_match_2b, _h_build_2b),
    MoveCase("3", "3", _h_match_3, _h_build_3),
    MoveCase("4", "4", _h_match_4, _h_build_4),
)


# --- cn:7,3: flat invariant, drop the minimum stack, play h ---

_CN73_SCHEDULE = ((1, 1, 1, 1, 1, 1, 1),)


def _build_cn73(builder: TraceBuilder):
    builder.apply_symmetry(_rotation_to_front(builder.position, builder.position.index(0)))
    builder.remove_zeros([0])
    return move_h


_CN73_CASES = (MoveCase("zero-front", "1", _always, _build_cn73),)


# --- cn:8,3: square invariants, zeros at distance three or adjacent ---

CN83_INVARIANTS = ((1, 0, 1, 0, 1, 0, 1, 0), (0, 1, 0, 1, 0, 1, 0, 1))


def _cn83_map_for(t: Position, slots: tuple[int, int]):
    for m in _maps(8):
        if t[m[slots[0]]] == 0 and t[m[slots[1]]] == 0:
            return m
    return None


def _cn83_match_split(t):
    return _cn83_map_for(t, (0, 3)) is not None


def _cn83_match_adjacent(t):
    return _cn83_map_for(t, (0, 1)) is not None


def _cn83_build_split(b: TraceBuilder):
    m = _cn83_map_for(b.position, (0, 3))
    b.apply_symmetry(inverse_perm(m))
    b.remove_zeros([0, 3])
    b.merge([3, 4])  # the two stacks between the dropped pair, long way round
    return _move_cn52


def _cn83_build_adjacent(b: TraceBuilder):
    m = _cn83_map_for(b.position, (0, 1))
    b.apply_symmetry(inverse_perm(m))
    b.remove_zeros([0, 1])
    return _pn_solver(6, 3)


CN83_CASES = (
    MoveCase("split", "split", _cn83_match_split, _cn83_build_split),
    MoveCase("adjacent", "adjacent", _cn83_match_adjacent, _cn83_build_adjacent),
)


# ---------------------------------------------------------------------------
# Traced move entry points
# ---------------------------------------------------------------------------

def _guided(game_id: str, schedule, cases, member, pos):
    if member(pos):
        return None, None
    res = move_via_reduction(_spec(game_id), schedule, cases, pos)
    if res is None:
        raise NoCaseMatchedError(f"{game_id}: sub-game reported P for a non-member")
    return res


def _h_move_traced(pos) -> tuple[Move | None, ReductionTrace | None]:
    pos = _check_len(pos, 6)
    return _guided("h", H_INVARIANTS, H_CASES, _h_member, pos)


def move_h(pos: Sequence[int]) -> Move | None:
    """Winning move in game h via invariant reduction; None at P positions."""
    return _h_move_traced(pos)[0]


def _cn73_move_traced(pos) -> tuple[Move | None, ReductionTrace | None]:
    pos = _check_len(pos, 7)
    return _guided("cn:7,3", _CN73_SCHEDULE, _CN73_CASES, _cn73_member, pos)


def move_cn73(pos: Sequence[int]) -> Move | None:
    return _cn73_move_traced(pos)[0]


def _cn83_move_traced(pos) -> tuple[Move | None, ReductionTrace | None]:
    pos = _check_len(pos, 8)
    return _guided("cn:8,3", CN83_INVARIANTS, CN83_CASES, _cn83_member, pos)


def move_cn83(pos: Sequence[int]) -> Move | None:
    return _cn83_move_traced(pos)[0]


def _cn52_move_traced(pos):
    pos = _check_len(pos, 5)
    return _guided("cn:5,2", _CN52_SCHEDULE, _CN52_CASES, _cn52_member, pos)


def _move_cn52(pos) -> Move | None:
    return _cn52_move_traced(pos)[0]


def _cn63_move_traced(pos):
    pos = _check_len(pos, 6)
    return _guided("cn:6,3", _CN63_SCHEDULE, _CN63_CASES, _cn63_member, pos)


def _move_cn63(pos) -> Move | None:
    return _cn63_move_traced(pos)[0]


class BruteMoveFn:
    """Winning-move supplier backed by the brute-force engine.

    Used for the solved games whose papers give membership but no playing
    procedure; results are flagged ``brute_force`` and stay desk scale.
    The engine (and its memo) is built lazily per process.
    """

    def __init__(self, game_id: str, budget: int = DEFAULT_BUDGET):
        self.game_id = game_id
        self.budget = budget
        self._engine: GrundyEngine | None = None

    def __call__(self, pos) -> Move | None:
        if self._engine is None:
            self._engine = GrundyEngine(_spec(self.game_id), self.budget)
        return self._engine.winning_move(pos)

    def __reduce__(self):
        return (BruteMoveFn, (self.game_id, self.budget))


def _pn_move_traced(n, k, pos):
    return move_path(n, k, pos), None


def _untraced(move_fn, pos):
    return move_fn(pos), None


def move_base(game: str, pos: Sequence[int]) -> Move | None:
    """Winning move for the six base games; brute force where no procedure exists."""
    oracle = oracle_for(game)
    if oracle is None or game not in BASE_GAMES:
        raise UnsupportedGameError(f"no base oracle for {game!r}")
    return oracle.move(_check_len(pos, oracle.spec.n))


# ---------------------------------------------------------------------------
# Registry and dispatch
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Oracle:
    """Membership plus move supplier for one solved game."""

    game_id: str
    spec: GameSpec
    membership: Callable[[Position], bool]
    membership_batch: Callable[[np.ndarray], np.ndarray]
    move: Callable[[Position], Move | None]
    traced_move: Callable[[Position], tuple[Move | None, ReductionTrace | None]]
    move_method: str
    invariants: tuple[tuple[int, ...], ...] = ()
    cases: tuple[MoveCase, ...] = ()


_FIXED_ORACLES = {
    "cn:3,2": (_cn32_batch, _move_cn32, None, "closed_form", (), ()),
    "cn:4,2": (_cn42_batch, _move_cn42, None, "closed_form", (), ()),
    "cn:5,2": (_cn52_batch, _move_cn52, _cn52_move_traced, "reduction", _CN52_SCHEDULE, _CN52_CASES),
    "cn:5,3": (_cn53_batch, None, None, "brute_force", (), ()),
    "cn:6,3": (_cn63_batch, _move_cn63, _cn63_move_traced, "reduction", _CN63_SCHEDULE, _CN63_CASES),
    "cn:7,4": (_cn74_batch, None, None, "brute_force", (), ()),
    "cn:7,3": (_cn73_batch, move_cn73, _cn73_move_traced, "reduction", _CN73_SCHEDULE, _CN73_CASES),
    "cn:8,3": (_cn83_batch, move_cn83, _cn83_move_traced, "reduction", CN83_INVARIANTS, CN83_CASES),
    "h": (_h_batch, move_h, _h_move_traced, "reduction", H_INVARIANTS, H_CASES),
}


@lru_cache(maxsize=None)
def oracle_for(game_id: str) -> Oracle | None:
    """Look up the oracle for a game id; None when the game is unsolved here."""
    game_id = game_id.strip()
    if game_id in _FIXED_ORACLES:
        batch, move_fn, traced, method, invariants, cases = _FIXED_ORACLES[game_id]
        spec = _spec(game_id)
        membership = partial(p_membership_base, game_id) if game_id in BASE_GAMES else {
            "cn:7,3": p_membership_cn73,
            "cn:8,3": p_membership_cn83,
            "h": p_membership_h,
        }[game_id]
        if move_fn is None:
            move_fn = BruteMoveFn(game_id)
        if traced is None:
            traced = partial(_untraced, move_fn)
        return Oracle(
            game_id=game_id,
            spec=spec,
            membership=membership,
            membership_batch=batch,
            move=move_fn,
            traced_move=traced,
            move_method=method,
            invariants=tuple(invariants),
            cases=tuple(cases),
        )
    if game_id.startswith("pn:"):
        try:
            spec = _spec(game_id)
        except Exception:
            return None
        n, k = map(int, game_id[3:].split(","))
        if 2 * k < n:
            return None
        return Oracle(
            game_id=game_id,
            spec=spec,
            membership=partial(p_membership_path, n, k),
            membership_batch=partial(_pn_batch, n, k),
            move=partial(move_path, n, k),
            traced_move=partial(_pn_move_traced, n, k),
            move_method="closed_form",
            invariants=((1,) + (0,) * (n - 2) + (1,),) if n >= 2 else (),
            cases=(),
        )
    return None


@dataclass(frozen=True)
class SolveResult:
    """Outcome, optional winning move, and how the answer was obtained."""

    game_id: str
    position: Position
    outcome: Outcome
    move: Move | None
    method: str
    trace: ReductionTrace | None = None

    @property
    def resulting_position(self) -> Position | None:
        if self.move is None:
            return None
        return apply_move(self.position, self.move)


def solve(game: str | GameSpec, pos: Sequence[int], budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Classify a position and, when it is N, produce a winning move.

    Dispatches to the registered oracle; unknown or unsolved games fall
    back to the brute-force engine under the given budget.  ``game`` may be
    an id string or a ready spec (useful for derived sub-games).
    """
    spec = game if isinstance(game, GameSpec) else builtin_game(game)
    pos = check_position(spec, pos)
    oracle = oracle_for(spec.id)
    if oracle is None:
        engine = GrundyEngine(spec, budget)
        if engine.is_p(pos):
            return SolveResult(spec.id, pos, Outcome.P, None, "brute_force")
        return SolveResult(spec.id, pos, Outcome.N, engine.winning_move(pos), "brute_force")
    if oracle.membership(pos):
        return SolveResult(spec.id, pos, Outcome.P, None, "closed_form")
    mv, trace = oracle.traced_move(pos)
    if mv is None:
        raise NoCaseMatchedError(f"{spec.id}: oracle produced no move at non-member {pos}")
    return SolveResult(spec.id, pos, Outcome.N, mv, oracle.move_method, trace)


def case_label(game_id: str, reduced: Position) -> str | None:
    """Which move-table branch a reduced position falls into, if the game has one."""
    oracle = oracle_for(game_id)
    if oracle is None or not oracle.cases:
        return None
    case = classify_case(oracle.cases, reduced)
    return case.label if case else None


def reduce_position(game_id: str, pos: Sequence[int], vectors=None):
    """Invariance-reduce a position with the game's (or given) schedule.

    Returns ``(reduced, coefficients, iterates, label)``: the per-vector
    intermediate positions and, when the game has a move table, the branch
    label of the final reduced position.
    """
    spec = builtin_game(game_id)
    pos = check_position(spec, pos)
    if vectors is None:
        oracle = oracle_for(spec.id)
        if oracle is None or not oracle.invariants:
            raise UnsupportedGameError(f"{spec.id} has no registered invariant schedule")
        vectors = oracle.invariants
    cur = pos
    coeffs: list[int] = []
    iterates: list[Position] = []
    for z in vectors:
        reduced_one, (c,), _steps = invariance_reduce([z], cur)
        coeffs.append(c)
        cur = reduced_one
        iterates.append(cur)
    return cur, tuple(coeffs), iterates, case_label(spec.id, cur)
