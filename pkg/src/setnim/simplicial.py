"""Simplicial view of a game: minimal non-playable sets and their points.

The move sets of a game are the facets of a complex; a *circuit* is a
minimal non-face, i.e. a set of stacks that cannot be played on together
although every proper subset can.  When every circuit owns a private
vertex (a *point*), the P positions are exactly the non-negative integer
combinations of the circuit indicator vectors, which gives a direct
membership test.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from typing import Sequence

from .errors import NotPointedError, TooLargeError
from .games import GameSpec, Position, check_position


@dataclass(frozen=True)
class Circuit:
    """A minimal non-playable set with its private vertices, if any."""

    vertices: tuple[int, ...]
    points: tuple[int, ...]
    n: int

    @property
    def indicator(self) -> tuple[int, ...]:
        return tuple(1 if i in self.vertices else 0 for i in range(self.n))

    @property
    def point(self) -> int | None:
        return self.points[0] if self.points else None


def circuits(spec: GameSpec, limit: int = 12) -> list[tuple[int, ...]]:
    """All minimal non-faces, lexicographically ordered.

    Walks the subset lattice by cardinality; a set is a circuit when it is
    not inside any move set but every one-smaller subset is.
    """
    if spec.n > limit:
        raise TooLargeError(f"circuit enumeration capped at n={limit}")
    out = []
    for size in range(2, spec.n + 1):
        for cand in itertools.combinations(range(spec.n), size):
            if spec.is_face(cand):
                continue
            if all(spec.is_face(sub) for sub in itertools.combinations(cand, size - 1)):
                out.append(cand)
    return sorted(out)


def points_of(
    circuit_list: Sequence[Sequence[int]], n: int | None = None
) -> tuple[list[Circuit], bool]:
    """Mark each circuit's private vertices; pointed iff every circuit has one."""
    counts: dict[int, int] = {}
    for c in circuit_list:
        for v in c:
            counts[v] = counts.get(v, 0) + 1
    if n is None:
        n = max(counts, default=-1) + 1
    annotated = [
        Circuit(
            vertices=tuple(sorted(c)),
            points=tuple(v for v in sorted(c) if counts[v] == 1),
            n=n,
        )
        for c in circuit_list
    ]
    pointed = all(c.points for c in annotated)
    return annotated, pointed


def pointed_p_membership(spec: GameSpec, pos: Sequence[int]) -> bool:
    """P test for pointed complexes: read coefficients off the points.

    Each circuit's coefficient is forced to be the height at its designated
    point; membership holds exactly when those coefficients rebuild the
    position.  Raises when the complex is not pointed.
    """
    pos = check_position(spec, pos)
    annotated, pointed = points_of(circuits(spec), spec.n)
    if not pointed:
        raise NotPointedError(f"{spec.id}: some circuit has no private vertex")
    rebuilt = [0] * spec.n
    for c in annotated:
        coeff = pos[c.point]
        for v in c.vertices:
            rebuilt[v] += coeff
    return tuple(rebuilt) == pos


def family_formula(annotated: Sequence[Circuit], n: int) -> list[str]:
    """Symbolic P-position family: one coefficient letter per circuit."""
    letters = string.ascii_lowercase
    terms = [[] for _ in range(n)]
    for idx, c in enumerate(annotated):
        for v in c.vertices:
            terms[v].append(letters[idx % len(letters)])
    return ["+".join(t) if t else "0" for t in terms]
