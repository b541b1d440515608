"""Game definitions, positions, moves, legality and symmetries.

A game is a set of stacks indexed ``0..n-1`` together with a family of
*move sets*: a legal move removes at least one token in total, and only
from stacks that all lie inside a single move set.  Families are stored
normalized: deduplicated, non-maximal sets dropped, everything sorted.

Positions and moves are plain tuples of non-negative ints so they can be
hashed, shared between workers and used as memo keys directly.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import (
    BadParametersError,
    CoverageGapError,
    DimensionMismatchError,
    EmptySetError,
    FileFormatError,
    IndexOutOfRangeError,
    NegativeResultError,
    TooLargeError,
    UnknownIdError,
)

Position = tuple[int, ...]
Move = tuple[int, ...]
Perm = tuple[int, ...]

#: Display labels for vertices; index 0 is "a", matching the usual way
#: small games are written out.
VERTEX_LABELS = "abcdefghijkl"


class Outcome(str, Enum):
    P = "P"  # previous player wins (next to move loses)
    N = "N"  # next player wins

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


@dataclass(frozen=True)
class GameSpec:
    """A normalized game: stack count plus maximal move sets."""

    n: int
    move_sets: tuple[tuple[int, ...], ...]
    id: str

    def __post_init__(self):
        object.__setattr__(
            self, "_set_family", tuple(frozenset(s) for s in self.move_sets)
        )

    @property
    def set_family(self) -> tuple[frozenset[int], ...]:
        return self._set_family  # type: ignore[attr-defined]

    def is_face(self, vertices: Iterable[int]) -> bool:
        """True iff ``vertices`` is playable, i.e. inside some move set."""
        vs = frozenset(vertices)
        return any(vs <= a for a in self.set_family)

    def describe(self) -> str:
        sets = ",".join("{" + "".join(VERTEX_LABELS[i] for i in s) + "}" for s in self.move_sets)
        return f"{self.id}: n={self.n} sets {sets}"


def _normalize_sets(n: int, raw_sets: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    cleaned: list[frozenset[int]] = []
    for raw in raw_sets:
        s = frozenset(raw)
        if not s:
            raise EmptySetError("move set is empty")
        for v in s:
            if not isinstance(v, int) or isinstance(v, bool) or not (0 <= v < n):
                raise IndexOutOfRangeError(f"vertex {v!r} outside 0..{n - 1}")
        cleaned.append(s)
    maximal = [s for s in cleaned if not any(s < t for t in cleaned)]
    unique = sorted({tuple(sorted(s)) for s in maximal})
    return tuple(unique)


def build_game(n: int, raw_sets: Iterable[Iterable[int]], game_id: str | None = None) -> GameSpec:
    """Normalize and validate a raw family of move sets.

    Drops duplicates and non-maximal sets, sorts everything, and requires
    the union of the sets to cover every stack (an uncovered stack could
    never be emptied, so the game would have no terminal position).
    """
    if n < 1:
        raise BadParametersError(f"need at least one stack, got n={n}")
    sets = _normalize_sets(n, raw_sets)
    covered = set(itertools.chain.from_iterable(sets))
    missing = set(range(n)) - covered
    if missing:
        raise CoverageGapError(missing)
    if game_id is None:
        game_id = "sn:%d:%s" % (n, ";".join("".join(map(str, s)) for s in sets))
    return GameSpec(n=n, move_sets=sets, id=game_id)


_ID_RE = re.compile(r"^(nim|moore|cn|pn):(\d+)(?:,(\d+))?$")


def _windows(n: int, k: int, cyclic: bool) -> list[list[int]]:
    if cyclic:
        return [[(i + j) % n for j in range(k)] for i in range(n)]
    return [list(range(i, i + k)) for i in range(n - k + 1)]


def builtin_game(game_id: str) -> GameSpec:
    """Resolve a game id.

    Grammar: ``nim:<n>`` | ``moore:<n>,<k>`` | ``cn:<n>,<k>`` | ``pn:<n>,<k>``
    | ``h`` | ``file:<path>``.  ``cn``/``pn`` use windows of ``k`` consecutive
    stacks on a cycle/path; ``h`` is the six-stack path game with the extra
    end-to-end move.
    """
    game_id = game_id.strip()
    if game_id == "h":
        return build_game(6, [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 5], [0, 5]], "h")
    if game_id.startswith("file:"):
        return load_game_file(game_id[len("file:"):])
    m = _ID_RE.match(game_id)
    if not m:
        raise UnknownIdError(f"unrecognized game id {game_id!r}")
    kind, n_s, k_s = m.groups()
    n = int(n_s)
    if n < 1:
        raise BadParametersError(f"{game_id}: n must be >= 1")
    if kind == "nim":
        if k_s is not None:
            raise UnknownIdError(f"{game_id!r}: nim takes a single parameter")
        return build_game(n, [[i] for i in range(n)], f"nim:{n}")
    if k_s is None:
        raise UnknownIdError(f"{game_id!r}: missing k parameter")
    k = int(k_s)
    if not (1 <= k <= n):
        raise BadParametersError(f"{game_id}: need 1 <= k <= n")
    if kind == "moore":
        return build_game(n, itertools.combinations(range(n), k), f"moore:{n},{k}")
    if kind == "cn":
        return build_game(n, _windows(n, k, cyclic=True), f"cn:{n},{k}")
    return build_game(n, _windows(n, k, cyclic=False), f"pn:{n},{k}")


def load_game_file(path: str) -> GameSpec:
    """Load a custom game from a JSON file with fields ``n`` and ``move_sets``."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: top level must be an object")
    n = doc.get("n")
    sets = doc.get("move_sets")
    if not isinstance(n, int) or isinstance(n, bool):
        raise FileFormatError(f"{path}: field 'n' must be an integer")
    if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
        raise FileFormatError(f"{path}: field 'move_sets' must be a list of lists")
    game_id = doc.get("id")
    if game_id is not None and not isinstance(game_id, str):
        raise FileFormatError(f"{path}: field 'id' must be a string")
    try:
        return build_game(n, sets, game_id or f"file:{path}")
    except (EmptySetError, IndexOutOfRangeError, CoverageGapError, BadParametersError) as exc:
        raise FileFormatError(f"{path}: {exc}") from exc


def check_position(spec: GameSpec, pos: Sequence[int]) -> Position:
    pos = tuple(pos)
    if len(pos) != spec.n:
        raise DimensionMismatchError(f"position has {len(pos)} stacks, game has {spec.n}")
    if any((not isinstance(v, int)) or v < 0 for v in pos):
        raise DimensionMismatchError("stack heights must be non-negative integers")
    return pos


def support(vec: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, v in enumerate(vec) if v)


def is_legal_move(spec: GameSpec, pos: Sequence[int], mv: Sequence[int]) -> tuple[bool, str | None]:
    """Check one move; returns ``(legal, reason)`` with ``reason=None`` when legal.

    Reasons: ``NoTokensRemoved``, ``Overdraw`` (removal exceeds a stack) and
    ``UnsupportedSupport`` (stacks played on fit no move set).
    """
    pos = check_position(spec, pos)
    mv = tuple(mv)
    if len(mv) != spec.n:
        raise DimensionMismatchError(f"move has {len(mv)} entries, game has {spec.n}")
    if any((not isinstance(v, int)) or v < 0 for v in mv):
        raise DimensionMismatchError("removals must be non-negative integers")
    if sum(mv) < 1:
        return False, "NoTokensRemoved"
    if any(m > p for m, p in zip(mv, pos)):
        return False, "Overdraw"
    if not spec.is_face(support(mv)):
        return False, "UnsupportedSupport"
    return True, None


def apply_move(pos: Sequence[int], mv: Sequence[int]) -> Position:
    """Componentwise difference; raises when a removal exceeds its stack."""
    if len(pos) != len(mv):
        raise DimensionMismatchError("position and move lengths differ")
    out = tuple(p - m for p, m in zip(pos, mv))
    if any(v < 0 for v in out):
        raise NegativeResultError("removal exceeds stack height")
    return out


def legal_moves(spec: GameSpec, pos: Sequence[int]) -> Iterator[Move]:
    """Yield every distinct legal move exactly once.

    Order is fixed: by move set index, then lexicographically over the full
    removal vector, so "first winning move" answers are reproducible.  A
    removal pattern legal under several sets is yielded only for the first.
    """
    pos = check_position(spec, pos)
    seen: set[Move] = set()
    for a in spec.move_sets:
        ranges = [range(pos[i] + 1) for i in a]
        for combo in itertools.product(*ranges):
            if not any(combo):
                continue
            mv = [0] * spec.n
            for i, r in zip(a, combo):
                mv[i] = r
            mv_t = tuple(mv)
            if mv_t not in seen:
                seen.add(mv_t)
                yield mv_t


def apply_perm(perm: Perm, vec: Sequence[int]) -> tuple[int, ...]:
    """Relabel a vector: entry at vertex ``i`` moves to vertex ``perm[i]``."""
    out = [0] * len(vec)
    for i, v in enumerate(vec):
        out[perm[i]] = v
    return tuple(out)


def inverse_perm(perm: Perm) -> Perm:
    out = [0] * len(perm)
    for i, j in enumerate(perm):
        out[j] = i
    return tuple(out)


def permute_spec(spec: GameSpec, perm: Perm, game_id: str | None = None) -> GameSpec:
    """The isomorphic game with vertex ``i`` renamed to ``perm[i]``."""
    sets = [[perm[v] for v in a] for a in spec.move_sets]
    return build_game(spec.n, sets, game_id or spec.id)


def symmetries(spec: GameSpec, limit: int = 12) -> list[Perm]:
    """All vertex permutations preserving the move-set family.

    Backtracking search with subset pruning; fine for sparse families up to
    the ``n <= 12`` bound (dense families like full Moore games have huge
    symmetry groups and are not meant to go through here).
    """
    if spec.n > limit:
        raise TooLargeError(f"symmetry search capped at n={limit}")
    n = spec.n
    family = set(spec.move_sets)
    sizes = sorted({len(a) for a in spec.move_sets})
    by_size = {s: [frozenset(a) for a in spec.move_sets if len(a) == s] for s in sizes}
    # Signature pruning: a vertex can only map to one with the same profile
    # of containing-set sizes.
    sig = [tuple(sorted(len(a) for a in spec.set_family if v in a)) for v in range(n)]
    containing = [[a for a in spec.move_sets if v in a] for v in range(n)]

    found: list[Perm] = []
    image = [-1] * n
    used = [False] * n

    def consistent(v: int) -> bool:
        for a in containing[v]:
            mapped = [image[u] for u in a if image[u] >= 0]
            ms = frozenset(mapped)
            if len(mapped) == len(a):
                if tuple(sorted(mapped)) not in family:
                    return False
            else:
                if not any(ms <= b for b in by_size[len(a)]):
                    return False
        return True

    def extend(v: int):
        if v == n:
            found.append(tuple(image))
            return
        for w in range(n):
            if used[w] or sig[w] != sig[v]:
                continue
            image[v] = w
            used[w] = True
            if consistent(v):
                extend(v + 1)
            used[w] = False
            image[v] = -1

    extend(0)
    return found


def dihedral_index_maps(n: int) -> list[tuple[int, ...]]:
    """Index maps for the 2n rotations/reflections of an n-cycle.

    Each map ``m`` reads as "slot j of the image takes stack ``m[j]``";
    rotations come first, then reflections, both by offset.
    """
    maps = [tuple((j + r) % n for j in range(n)) for r in range(n)]
    maps += [tuple((r - j) % n for j in range(n)) for r in range(n)]
    return maps
