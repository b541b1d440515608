"""Game reductions: relabeling, invariant subtraction, zero and merge steps.

A :class:`ReductionTrace` records how a game was shrunk so that positions
can be projected forward into the small game and moves found there can be
lifted back to the original game.  Traces are append-only values; lifting
walks the steps in reverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import (
    BadParametersError,
    DimensionMismatchError,
    EmptyResultError,
    IllegalReducedMoveError,
    NegativeHeightError,
    NonZeroVertexError,
    PreconditionViolatedError,
)
from .games import (
    GameSpec,
    Move,
    Position,
    apply_perm,
    build_game,
    check_position,
    is_legal_move,
    permute_spec,
)


@dataclass(frozen=True)
class SymmetryStep:
    """Relabel vertices: stack ``i`` becomes stack ``perm[i]``."""

    perm: tuple[int, ...]


@dataclass(frozen=True)
class InvarianceStep:
    """Subtract ``coeff`` copies of the zero-one vector ``z``."""

    z: tuple[int, ...]
    coeff: int


@dataclass(frozen=True)
class ZeroStep:
    """Drop empty stacks; ``remap[old]`` is the new index or None if dropped."""

    removed: tuple[int, ...]
    remap: tuple[int | None, ...]


@dataclass(frozen=True)
class MergeStep:
    """Collapse the class ``merged`` into one stack at ``merged_index``."""

    merged: tuple[int, ...]
    merged_index: int
    remap: tuple[int, ...]


ReductionStep = Union[SymmetryStep, InvarianceStep, ZeroStep, MergeStep]


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    source_spec: GameSpec
    target_spec: GameSpec


def zero_reduce(
    spec: GameSpec, pos: Sequence[int], subset: Iterable[int] | None = None
) -> tuple[GameSpec, Position, ZeroStep]:
    """Remove empty stacks and restrict every move set to the survivors.

    ``subset`` defaults to all empty stacks; passing an explicit subset lets
    a caller drop only some of them, which several playing procedures need.
    """
    pos = tuple(pos)
    if subset is None:
        subset = [i for i, p in enumerate(pos) if p == 0]
    removed = tuple(sorted(set(subset)))
    if not removed:
        raise BadParametersError("zero reduction needs a nonempty subset")
    for v in removed:
        if v < 0 or v >= spec.n:
            raise DimensionMismatchError(f"vertex {v} outside game")
        if pos[v] != 0:
            raise NonZeroVertexError(f"stack {v} holds {pos[v]} tokens, cannot drop it")
    survivors = [v for v in range(spec.n) if v not in removed]
    if not survivors:
        raise EmptyResultError("zero reduction removed every stack")
    remap_list: list[int | None] = [None] * spec.n
    for new, old in enumerate(survivors):
        remap_list[old] = new
    step = ZeroStep(removed=removed, remap=tuple(remap_list))
    restricted = []
    for a in spec.move_sets:
        r = [remap_list[v] for v in a if remap_list[v] is not None]
        if r:
            restricted.append(r)
    new_spec = build_game(len(survivors), restricted)
    new_pos = tuple(pos[v] for v in survivors)
    return new_spec, new_pos, step


def mergeable_classes(spec: GameSpec) -> list[tuple[int, ...]]:
    """Partition vertices by which move sets contain them.

    Two stacks land in the same class exactly when every move set contains
    both or neither; classes of size >= 2 are the merge candidates.
    """
    groups: dict[tuple[int, ...], list[int]] = {}
    for v in range(spec.n):
        key = tuple(i for i, a in enumerate(spec.set_family) if v in a)
        groups.setdefault(key, []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def merge_reduce(spec: GameSpec, cls: Iterable[int]) -> tuple[GameSpec, MergeStep]:
    """Collapse a co-occurring class of stacks into a single stack.

    Requires every move set to contain the whole class or none of it.  The
    merged stack sits where the lowest class member was; its height is the
    class total.
    """
    merged = tuple(sorted(set(cls)))
    if len(merged) < 2:
        raise PreconditionViolatedError("merge class needs at least two stacks")
    cset = set(merged)
    if any(v < 0 or v >= spec.n for v in merged):
        raise DimensionMismatchError("merge class outside game")
    for a in spec.set_family:
        inter = cset & a
        if inter and inter != cset:
            raise PreconditionViolatedError(
                f"set {tuple(sorted(a))} splits the class {merged}"
            )
    rep = merged[0]
    new_order = sorted(v for v in range(spec.n) if v not in cset or v == rep)
    index_of = {v: i for i, v in enumerate(new_order)}
    remap = tuple(index_of[v] if v not in cset else index_of[rep] for v in range(spec.n))
    step = MergeStep(merged=merged, merged_index=index_of[rep], remap=remap)
    new_sets = [{remap[v] for v in a} for a in spec.move_sets]
    new_spec = build_game(len(new_order), new_sets)
    return new_spec, step


def project_step(step: ReductionStep, pos: Sequence[int]) -> Position:
    pos = tuple(pos)
    if isinstance(step, SymmetryStep):
        return apply_perm(step.perm, pos)
    if isinstance(step, InvarianceStep):
        out = tuple(p - step.coeff * z for p, z in zip(pos, step.z))
        if any(v < 0 for v in out):
            raise NegativeHeightError("invariant subtraction went negative")
        return out
    if isinstance(step, ZeroStep):
        for v in step.removed:
            if pos[v] != 0:
                raise NonZeroVertexError(f"stack {v} holds {pos[v]} tokens, cannot drop it")
        size = sum(1 for r in step.remap if r is not None)
        out_l = [0] * size
        for old, new in enumerate(step.remap):
            if new is not None:
                out_l[new] = pos[old]
        return tuple(out_l)
    if isinstance(step, MergeStep):
        size = max(step.remap) + 1
        out_l = [0] * size
        for old, new in enumerate(step.remap):
            out_l[new] += pos[old]
        return tuple(out_l)
    raise TypeError(f"unknown step {step!r}")


def project(trace: ReductionTrace, pos: Sequence[int]) -> Position:
    """Push a position of the source game through every step of the trace."""
    cur = check_position(trace.source_spec, pos)
    for step in trace.steps:
        cur = project_step(step, cur)
    return cur


def _lift_step(step: ReductionStep, mv: Sequence[int], pos_before: Sequence[int]) -> Move:
    """Lift a move through one step; ``pos_before`` is the step's input position."""
    if isinstance(step, SymmetryStep):
        return tuple(mv[step.perm[i]] for i in range(len(step.perm)))
    if isinstance(step, InvarianceStep):
        return tuple(mv)
    if isinstance(step, ZeroStep):
        return tuple(0 if new is None else mv[new] for new in step.remap)
    if isinstance(step, MergeStep):
        out = [0] * len(step.remap)
        for old, new in enumerate(step.remap):
            if old not in step.merged:
                out[old] = mv[new]
        todo = mv[step.merged_index]
        # Drain the merged removal smallest stack first, ties by lower index.
        for old in sorted(step.merged, key=lambda v: (pos_before[v], v)):
            take = min(todo, pos_before[old])
            out[old] = take
            todo -= take
        if todo:
            raise IllegalReducedMoveError("merged removal exceeds the class total")
        return tuple(out)
    raise TypeError(f"unknown step {step!r}")


def lift_move(trace: ReductionTrace, reduced_mv: Sequence[int], pos: Sequence[int]) -> Move:
    """Turn a move of the reduced game into a legal source-game move.

    The lifted move has the same effect as ``reduced_mv`` after projection.
    Zeros are reinserted for dropped stacks and merged removals are spread
    over the class, taking from the smallest stack first.
    """
    pos = check_position(trace.source_spec, pos)
    intermediates = [pos]
    cur = pos
    for step in trace.steps:
        cur = project_step(step, cur)
        intermediates.append(cur)
    legal, reason = is_legal_move(trace.target_spec, cur, reduced_mv)
    if not legal:
        raise IllegalReducedMoveError(f"reduced move rejected: {reason}")
    mv = tuple(reduced_mv)
    for step, before in zip(reversed(trace.steps), reversed(intermediates[:-1])):
        mv = _lift_step(step, mv, before)
    return mv


class TraceBuilder:
    """Accumulates reduction steps while tracking the current game/position."""

    def __init__(self, spec: GameSpec, pos: Sequence[int]):
        self._source_spec = spec
        self.spec = spec
        self.position = check_position(spec, pos)
        self.steps: list[ReductionStep] = []

    def apply_symmetry(self, perm: Sequence[int]) -> None:
        step = SymmetryStep(perm=tuple(perm))
        self.position = project_step(step, self.position)
        self.spec = permute_spec(self.spec, step.perm)
        self.steps.append(step)

    def apply_invariant(self, z: Sequence[int], coeff: int) -> None:
        if coeff < 0:
            raise BadParametersError("invariant coefficient must be >= 0")
        if coeff == 0:
            return
        step = InvarianceStep(z=tuple(z), coeff=coeff)
        self.position = project_step(step, self.position)
        self.steps.append(step)

    def remove_zeros(self, subset: Iterable[int] | None = None) -> None:
        self.spec, self.position, step = zero_reduce(self.spec, self.position, subset)
        self.steps.append(step)

    def merge(self, cls: Iterable[int]) -> None:
        self.spec, step = merge_reduce(self.spec, cls)
        self.position = project_step(step, self.position)
        self.steps.append(step)

    def finish(self) -> ReductionTrace:
        return ReductionTrace(
            steps=tuple(self.steps),
            source_spec=self._source_spec,
            target_spec=self.spec,
        )


def render_trace(trace: ReductionTrace, pos: Sequence[int] | None = None) -> list[str]:
    """Human-readable step list; includes positions when ``pos`` is given."""
    lines = [f"source game {trace.source_spec.id} (n={trace.source_spec.n})"]
    cur = check_position(trace.source_spec, pos) if pos is not None else None
    for step in trace.steps:
        if isinstance(step, InvarianceStep):
            desc = f"invariance: subtract {step.coeff} x {step.z}"
        elif isinstance(step, SymmetryStep):
            desc = f"symmetry: relabel stacks via {step.perm}"
        elif isinstance(step, ZeroStep):
            desc = f"zero: drop empty stacks {list(step.removed)}"
        else:
            desc = f"merge: combine stacks {list(step.merged)}"
        if cur is not None:
            cur = project_step(step, cur)
            desc += f" -> {cur}"
        lines.append("  " + desc)
    lines.append(f"target game {trace.target_spec.id} (n={trace.target_spec.n})")
    return lines
