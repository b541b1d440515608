"""Invariant vectors: bounded verification, discovery and guided play.

A zero-one vector ``z`` is *invariant* for a position set when adding or
subtracting copies of ``z`` (staying non-negative) never moves a position
in or out of the set.  Subtracting indicator minima of invariant vectors
forces zeros into a position without changing its outcome class, which is
what lets the move engine drop into a smaller solved game.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .errors import (
    BadParametersError,
    BudgetExceededError,
    DimensionMismatchError,
    NoCaseMatchedError,
)
from .games import GameSpec, Move, Position
from .grundy import DEFAULT_MAX_STATES, _box_matrix, _membership_array
from .reduction import InvarianceStep, ReductionTrace, TraceBuilder, lift_move, project_step

ZeroOne = tuple[int, ...]


@dataclass(frozen=True)
class InvariantVector:
    """A zero-one vector plus how far its invariance was actually checked.

    ``verified_bound`` is the box height of the bounded sweep, or the string
    ``"declared"`` when the vector is taken from a proved statement instead.
    """

    z: ZeroOne
    verified_bound: Union[int, str] = "declared"

    def __post_init__(self):
        if not self.z or any(v not in (0, 1) for v in self.z) or not any(self.z):
            raise BadParametersError(f"not a nonzero zero-one vector: {self.z}")


@dataclass(frozen=True)
class InvarianceSchedule:
    """Ordered vectors to subtract; optional groups with disjoint supports."""

    vectors: tuple[InvariantVector, ...]
    batches: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.batches is None:
            return
        for group in self.batches:
            seen: set[int] = set()
            for idx in group:
                sup = {i for i, v in enumerate(self.vectors[idx].z) if v}
                if seen & sup:
                    raise BadParametersError("batched vectors must have disjoint supports")
                seen |= sup


def _as_vectors(schedule) -> list[ZeroOne]:
    if isinstance(schedule, InvarianceSchedule):
        return [iv.z for iv in schedule.vectors]
    out = []
    for item in schedule:
        out.append(tuple(item.z if isinstance(item, InvariantVector) else item))
    return out


def indicator_min(z: Sequence[int], pos: Sequence[int]) -> int:
    """Minimum stack height over the 1-indices of ``z``."""
    if len(z) != len(pos):
        raise DimensionMismatchError("vector and position lengths differ")
    heights = [p for p, zi in zip(pos, z) if zi]
    if not heights:
        raise BadParametersError("vector has no 1-entries")
    return min(heights)


def invariance_reduce(schedule, pos: Sequence[int]):
    """Iteratively subtract each vector's indicator minimum.

    Returns ``(reduced, coefficients, steps)``.  Vectors whose support
    already holds a zero contribute coefficient 0 and no step; with a
    nonempty schedule the result always carries at least one zero and stays
    componentwise non-negative.
    """
    vectors = _as_vectors(schedule)
    cur = tuple(pos)
    coeffs: list[int] = []
    steps: list[InvarianceStep] = []
    for z in vectors:
        c = indicator_min(z, cur)
        coeffs.append(c)
        if c:
            step = InvarianceStep(z=z, coeff=c)
            cur = project_step(step, cur)
            steps.append(step)
    return cur, tuple(coeffs), tuple(steps)


def invariance_reduce_batched(groups: Sequence[Sequence[Sequence[int]]], pos: Sequence[int]):
    """Like :func:`invariance_reduce`, processing each group in one sweep.

    Coefficients inside a group are all read off the same position, which
    matches the sequential result exactly when supports are disjoint.
    """
    cur = tuple(pos)
    coeffs: list[int] = []
    steps: list[InvarianceStep] = []
    for group in groups:
        vectors = _as_vectors(group)
        batch = [(z, indicator_min(z, cur)) for z in vectors]
        for z, c in batch:
            coeffs.append(c)
            if c:
                step = InvarianceStep(z=z, coeff=c)
                cur = project_step(step, cur)
                steps.append(step)
    return cur, tuple(coeffs), tuple(steps)


def apply_schedule(builder: TraceBuilder, schedule) -> None:
    """Run an invariance reduction inside a trace builder."""
    for z in _as_vectors(schedule):
        builder.apply_invariant(z, indicator_min(z, builder.position))


def _member_box(membership, membership_batch, n: int, bound: int, max_states: int) -> np.ndarray:
    states = (bound + 1) ** n
    if states > max_states:
        raise BudgetExceededError(f"box has {states} states, over the cap of {max_states}")
    matrix = _box_matrix(n, bound)
    flat = _membership_array(membership, membership_batch, matrix)
    return flat.reshape((bound + 1,) * n)


def _invariant_on_box(member: np.ndarray, z: ZeroOne) -> bool:
    lo = tuple(slice(0, -1) if zi else slice(None) for zi in z)
    hi = tuple(slice(1, None) if zi else slice(None) for zi in z)
    return bool((member[lo] == member[hi]).all())


def is_invariant_bounded(
    membership: Callable[[Position], bool],
    z: Sequence[int],
    bound: int,
    n: int | None = None,
    *,
    membership_batch=None,
    max_states: int = DEFAULT_MAX_STATES,
) -> bool:
    """Check invariance of ``z`` over the box ``[0, bound]^n``.

    Compares membership at ``pos`` and ``pos + z`` for every pair inside the
    box; chaining adjacent pairs covers every in-box multiple.  A True
    answer is a certificate up to the bound, never a proof.
    """
    z = tuple(z)
    n = len(z) if n is None else n
    if len(z) != n:
        raise DimensionMismatchError("vector length differs from dimension")
    member = _member_box(membership, membership_batch, n, bound, max_states)
    return _invariant_on_box(member, z)


def invariance_counterexample(
    membership,
    z: Sequence[int],
    bound: int,
    *,
    membership_batch=None,
    max_states: int = DEFAULT_MAX_STATES,
) -> Position | None:
    """First box position (lexicographic) where membership flips under ``+z``."""
    z = tuple(z)
    member = _member_box(membership, membership_batch, len(z), bound, max_states)
    lo = tuple(slice(0, -1) if zi else slice(None) for zi in z)
    hi = tuple(slice(1, None) if zi else slice(None) for zi in z)
    diff = member[lo] != member[hi]
    if not diff.any():
        return None
    first = np.argwhere(diff)[0]
    return tuple(int(v) for v in first)


def discover_invariants(
    membership,
    n: int,
    bound: int,
    *,
    membership_batch=None,
    max_states: int = DEFAULT_MAX_STATES,
) -> tuple[list[InvariantVector], list[InvariantVector]]:
    """Sweep all nonzero zero-one vectors for bounded invariance.

    Returns ``(all, generators)`` where generators are the members of
    ``all`` not expressible as a sum of two nonzero members (such sums are
    zero-one exactly when the supports are disjoint).  Order is the
    lexicographic candidate order, so output is deterministic.
    """
    if n > 12:
        raise BudgetExceededError("candidate sweep capped at n=12")
    member = _member_box(membership, membership_batch, n, bound, max_states)
    hits: list[ZeroOne] = []
    for cand in itertools.product((0, 1), repeat=n):
        if not any(cand):
            continue
        if _invariant_on_box(member, cand):
            hits.append(cand)
    hit_set = set(hits)
    generators = []
    for z in hits:
        decomposable = False
        for a in hits:
            if a == z or any(ai > zi for ai, zi in zip(a, z)):
                continue
            b = tuple(zi - ai for zi, ai in zip(z, a))
            if any(b) and b in hit_set:
                decomposable = True
                break
        if not decomposable:
            generators.append(z)
    wrap = lambda zs: [InvariantVector(z=z, verified_bound=bound) for z in zs]
    return wrap(hits), wrap(generators)


@dataclass(frozen=True)
class MoveCase:
    """One zero-pattern branch of a guided-move table.

    ``matches`` inspects the invariance-reduced position; ``build`` appends
    the branch's relabel/zero/merge steps to the trace builder and returns
    the solver producing a winning move in the small game (None when the
    reduced position is a P position there).
    """

    name: str
    label: str
    matches: Callable[[Position], bool]
    build: Callable[[TraceBuilder], Callable[[Position], Move | None]]


def classify_case(cases: Sequence[MoveCase], reduced: Position) -> MoveCase | None:
    for case in cases:
        if case.matches(reduced):
            return case
    return None


def move_via_reduction(
    spec: GameSpec,
    schedule,
    cases: Sequence[MoveCase],
    pos: Sequence[int],
) -> tuple[Move, ReductionTrace] | None:
    """Generic guided move: reduce, branch on zeros, solve small, lift back.

    Subtracts the schedule's indicator minima, matches the zero pattern of
    the reduced position against the case table, runs the case's reduction
    recipe and sub-solver, and lifts the sub-game move through the whole
    trace.  Returns None when the sub-solver reports a P position.
    """
    builder = TraceBuilder(spec, pos)
    apply_schedule(builder, schedule)
    case = classify_case(cases, builder.position)
    if case is None:
        raise NoCaseMatchedError(
            f"{spec.id}: no case matches reduced position {builder.position}"
        )
    solver = case.build(builder)
    sub_move = solver(builder.position)
    if sub_move is None:
        return None
    trace = builder.finish()
    return lift_move(trace, sub_move, pos), trace


class CombinationSolver:
    """Decides membership in the non-negative integer span of given vectors.

    Memoized depth-first search over residuals: at each residual the first
    nonzero coordinate must be covered by some chosen vector, which prunes
    hard.  The memo persists across queries so box sweeps stay cheap.
    """

    def __init__(self, generators: Iterable[Sequence[int]], budget: int = 10**7):
        self.vectors = [
            tuple(g.z if isinstance(g, InvariantVector) else g) for g in generators
        ]
        self.budget = budget
        self.evaluations = 0
        self._memo: dict[Position, bool] = {}

    def contains(self, pos: Sequence[int]) -> bool:
        root = tuple(pos)
        if any(v < 0 for v in root):
            raise BadParametersError("positions must be non-negative")
        memo = self._memo
        if root in memo:
            return memo[root]
        # Explicit stack: (residual, iterator over candidate vectors, pending child)
        stack: list[list] = [[root, None, None]]
        while stack:
            frame = stack[-1]
            res, it, pending = frame
            if pending is not None:
                if memo[pending]:
                    memo[res] = True
                    stack.pop()
                    continue
                frame[2] = None
            if it is None:
                j = next((i for i, v in enumerate(res) if v), None)
                if j is None:
                    memo[res] = True
                    stack.pop()
                    continue
                it = iter(
                    [z for z in self.vectors if z[j] and all(r >= zi for r, zi in zip(res, z))]
                )
                frame[1] = it
            resolved = False
            for z in it:
                self.evaluations += 1
                if self.evaluations > self.budget:
                    raise BudgetExceededError("combination search budget exhausted")
                child = tuple(r - zi for r, zi in zip(res, z))
                known = memo.get(child)
                if known is True:
                    memo[res] = True
                    stack.pop()
                    resolved = True
                    break
                if known is None:
                    frame[2] = child
                    stack.append([child, None, None])
                    resolved = True
                    break
            if not resolved:
                memo[res] = False
                stack.pop()
        return memo[root]


def combo_membership(generators, pos: Sequence[int], budget: int = 10**7) -> bool:
    """One-shot wrapper around :class:`CombinationSolver`."""
    return CombinationSolver(generators, budget).contains(pos)
