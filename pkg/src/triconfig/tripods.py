"""Four equivalent grid-packing encodings and the reductions among them.

The square-grid puzzle that forbids taco and nested is the same problem,
re-costumed, as: filling a partial n x n matrix with values 1..n so that
rows, columns and each value's position sequence all increase; packing
axis-parallel tripods with disjoint rays; and choosing pairwise
2-comparable integer triples.  A one-directional reduction also turns any
triple set into a bipartite graph partitioned into induced matchings.

Everything here is verifier-first: each encoding has its own validity
check written straight from its own definition, converters must produce
objects the target verifier accepts, and the brute-force maxima of the
encodings are compared against each other in the tests rather than
trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable

from .core import ConfigKind, ForbiddenSet
from .misolver import DEFAULT_NODE_BUDGET, solve_mis
from .puzzle import (
    GRID_SQUARE,
    GRID_TRIANGULAR,
    Grid,
    PuzzleState,
    replay,
    search_best,
)

Triple = tuple[int, int, int]

ENC_TRIPLES = "triples"
ENC_MATRIX = "monotone-matrix"
ENC_TRIPODS = "tripods"
ENC_MATCHING = "matching"
ENC_PUZZLE = "puzzle"

TACO_NESTED = ForbiddenSet.of(ConfigKind.TACO, ConfigKind.NESTED)
TACO_NESTED_BAT_EARS = ForbiddenSet.of(
    ConfigKind.TACO, ConfigKind.NESTED, ConfigKind.BAT, ConfigKind.EARS
)


@dataclass(frozen=True)
class TripleSet:
    """Triples over {1..n}; valid when pairwise 2-comparable."""

    n: int
    triples: frozenset[Triple]

    @classmethod
    def of(cls, n: int, triples: Iterable[Triple]) -> "TripleSet":
        return cls(n, frozenset(tuple(int(v) for v in t) for t in triples))

    def to_json(self) -> dict:
        return {"encoding": ENC_TRIPLES, "n": self.n,
                "triples": sorted(list(t) for t in self.triples)}


@dataclass(frozen=True)
class TripodSet:
    """Tripod tops in {1..n}^3; valid when all rays are pairwise disjoint."""

    n: int
    tops: frozenset[Triple]

    @classmethod
    def of(cls, n: int, tops: Iterable[Triple]) -> "TripodSet":
        return cls(n, frozenset(tuple(int(v) for v in t) for t in tops))

    def to_json(self) -> dict:
        return {"encoding": ENC_TRIPODS, "n": self.n,
                "tops": sorted(list(t) for t in self.tops)}


@dataclass(frozen=True)
class MonotoneMatrix:
    """Partial n x n matrix over values 1..n.

    ``entries`` maps (row, col) to value; row 1 is the bottom row, so
    "columns increase bottom-to-top" means increasing with the row index.
    """

    n: int
    entries: tuple[tuple[int, int, int], ...]  # (row, col, value), sorted

    @classmethod
    def of(cls, n: int, entries: Iterable[tuple[int, int, int]]) -> "MonotoneMatrix":
        ents = sorted((int(r), int(c), int(v)) for r, c, v in entries)
        return cls(n, tuple(ents))

    def cell_map(self) -> dict[tuple[int, int], int]:
        return {(r, c): v for r, c, v in self.entries}

    def to_json(self) -> dict:
        return {"encoding": ENC_MATRIX, "n": self.n,
                "entries": [list(e) for e in self.entries]}


@dataclass(frozen=True)
class MatchingInstance:
    """Bipartite edges over {1..n} x {1..n} split into n induced matchings."""

    n: int
    partition: tuple[frozenset[tuple[int, int]], ...]

    @classmethod
    def of(cls, n: int, partition: Iterable[Iterable[tuple[int, int]]]) -> "MatchingInstance":
        parts = [frozenset((int(a), int(b)) for a, b in part) for part in partition]
        return cls(n, tuple(parts))

    def edges(self) -> frozenset[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for part in self.partition:
            out |= part
        return frozenset(out)

    def to_json(self) -> dict:
        return {"encoding": ENC_MATCHING, "n": self.n,
                "partition": [sorted(list(e) for e in part) for part in self.partition]}


@dataclass
class Verdict:
    ok: bool
    reason: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def two_comparable(a: Triple, b: Triple) -> bool:
    """At least two coordinates strictly increase, or at least two decrease."""
    inc = sum(1 for i in range(3) if a[i] < b[i])
    dec = sum(1 for i in range(3) if a[i] > b[i])
    return inc >= 2 or dec >= 2


def tripod_cells(top: Triple, bound: int) -> set[Triple]:
    """Grid cells covered by the three closed rays, truncated at ``bound``."""
    x, y, z = top
    cells = set()
    for t in range(bound - x + 1):
        cells.add((x + t, y, z))
    for t in range(bound - y + 1):
        cells.add((x, y + t, z))
    for t in range(bound - z + 1):
        cells.add((x, y, z + t))
    return cells


def rays_disjoint(p: Triple, q: Triple, n: int) -> bool:
    """Discrete oracle: truncate rays at n+1 and intersect the cell sets.

    For tops in {1..n}^3 any ray intersection shows up at coordinates
    <= n+1, so the truncation is lossless.
    """
    bound = n + 1
    return not (tripod_cells(p, bound) & tripod_cells(q, bound))


def _check_range(values: Iterable[int], n: int, what: str) -> str | None:
    for v in values:
        if not 1 <= v <= n:
            return f"{what} value {v} out of range 1..{n}"
    return None


def verify_triples(ts: TripleSet) -> Verdict:
    for t in ts.triples:
        err = _check_range(t, ts.n, "triple")
        if err:
            return Verdict(False, err, (t,))
    for a, b in combinations(sorted(ts.triples), 2):
        if not two_comparable(a, b):
            return Verdict(False, "pair is not 2-comparable", (a, b))
    return Verdict(True)


def verify_tripods(ts: TripodSet) -> Verdict:
    for t in ts.tops:
        err = _check_range(t, ts.n, "top")
        if err:
            return Verdict(False, err, (t,))
    for a, b in combinations(sorted(ts.tops), 2):
        if not rays_disjoint(a, b, ts.n):
            return Verdict(False, "tripod rays intersect", (a, b))
    return Verdict(True)


def verify_matrix(mm: MonotoneMatrix) -> Verdict:
    seen: dict[tuple[int, int], int] = {}
    for r, c, v in mm.entries:
        err = _check_range((r, c, v), mm.n, "matrix")
        if err:
            return Verdict(False, err, ((r, c, v),))
        if (r, c) in seen:
            return Verdict(False, "cell filled twice", ((r, c),))
        seen[(r, c)] = v
    by_row: dict[int, list[tuple[int, int]]] = {}
    by_col: dict[int, list[tuple[int, int]]] = {}
    by_val: dict[int, list[tuple[int, int]]] = {}
    for r, c, v in mm.entries:
        by_row.setdefault(r, []).append((c, v))
        by_col.setdefault(c, []).append((r, v))
        by_val.setdefault(v, []).append((r, c))
    for r, cells in by_row.items():
        cells.sort()
        for (c1, v1), (c2, v2) in zip(cells, cells[1:]):
            if v1 >= v2:
                return Verdict(False, f"row {r} not increasing", ((r, c1), (r, c2)))
    for c, cells in by_col.items():
        cells.sort()
        for (r1, v1), (r2, v2) in zip(cells, cells[1:]):
            if v1 >= v2:
                return Verdict(False, f"column {c} not increasing", ((r1, c), (r2, c)))
    for v, pos in by_val.items():
        pos.sort()
        for (r1, c1), (r2, c2) in zip(pos, pos[1:]):
            if not (r1 < r2 and c1 < c2):
                return Verdict(
                    False, f"positions of value {v} not strictly increasing",
                    ((r1, c1), (r2, c2)),
                )
    return Verdict(True)


def verify_matching(mi: MatchingInstance) -> Verdict:
    if len(mi.partition) > mi.n:
        return Verdict(False, f"more than {mi.n} matchings")
    edges = mi.edges()
    for a, b in edges:
        err = _check_range((a, b), mi.n, "edge endpoint")
        if err:
            return Verdict(False, err, ((a, b),))
    total = sum(len(part) for part in mi.partition)
    if total != len(edges):
        return Verdict(False, "an edge appears in two matchings")
    for i, part in enumerate(mi.partition):
        for (a1, b1), (a2, b2) in combinations(sorted(part), 2):
            if a1 == a2 or b1 == b2:
                return Verdict(False, f"matching {i + 1} shares an endpoint",
                               ((a1, b1), (a2, b2)))
            if (a1, b2) in edges or (a2, b1) in edges:
                return Verdict(False, f"matching {i + 1} is not induced",
                               ((a1, b1), (a2, b2)))
    return Verdict(True)


def verify(obj) -> Verdict:
    if isinstance(obj, TripleSet):
        return verify_triples(obj)
    if isinstance(obj, TripodSet):
        return verify_tripods(obj)
    if isinstance(obj, MonotoneMatrix):
        return verify_matrix(obj)
    if isinstance(obj, MatchingInstance):
        return verify_matching(obj)
    if isinstance(obj, PuzzleState):
        # already validated on construction; re-validate defensively
        replay(obj.grid, obj.x, [sorted(r) for r in obj.rounds])
        return Verdict(True)
    raise TypeError(f"no verifier for {type(obj).__name__}")


def matrix_pair_ok(e1: tuple[int, int, int], e2: tuple[int, int, int]) -> bool:
    """Can two (row, col, value) entries coexist in a monotone matrix?"""
    (r1, c1, v1), (r2, c2, v2) = e1, e2
    if (r1, c1) == (r2, c2):
        return False
    if v1 == v2:
        return (r1 < r2 and c1 < c2) or (r1 > r2 and c1 > c2)
    if r1 == r2:
        return (c1 < c2) == (v1 < v2)
    if c1 == c2:
        return (r1 < r2) == (v1 < v2)
    return True


# --- conversions -----------------------------------------------------------

def triples_to_matrix(ts: TripleSet) -> MonotoneMatrix:
    """(value, col, row) reading: triple (a, b, c) puts value a at col b, row c."""
    return MonotoneMatrix.of(ts.n, ((c, b, a) for a, b, c in ts.triples))


def matrix_to_triples(mm: MonotoneMatrix) -> TripleSet:
    return TripleSet.of(mm.n, ((v, c, r) for r, c, v in mm.entries))


def triples_to_tripods(ts: TripleSet) -> TripodSet:
    return TripodSet.of(ts.n, ts.triples)


def tripods_to_triples(ts: TripodSet) -> TripleSet:
    return TripleSet.of(ts.n, ts.tops)


def triples_to_matching(ts: TripleSet) -> MatchingInstance:
    parts: list[set[tuple[int, int]]] = [set() for _ in range(ts.n)]
    for a, b, c in ts.triples:
        parts[a - 1].add((b, c))
    return MatchingInstance.of(ts.n, parts)


def puzzle_to_triples(state: PuzzleState) -> TripleSet:
    """Square-grid solution to triples: point (x, y) in round i becomes (i, x, y)."""
    if state.grid.kind != GRID_SQUARE:
        raise ValueError("only square-grid solutions convert to triples")
    triples = []
    for i, round_pts in enumerate(state.rounds, start=1):
        for x, y in round_pts:
            triples.append((i, x, y))
    return TripleSet.of(state.grid.n, triples)


def triples_to_puzzle(ts: TripleSet) -> PuzzleState:
    """Triples back to a square-grid game forbidding taco and nested."""
    rounds: list[list[tuple[int, int]]] = [[] for _ in range(ts.n)]
    for a, b, c in ts.triples:
        rounds[a - 1].append((b, c))
    return replay(Grid(GRID_SQUARE, ts.n), TACO_NESTED, rounds)


_CONVERTERS = {
    (ENC_TRIPLES, ENC_MATRIX): triples_to_matrix,
    (ENC_MATRIX, ENC_TRIPLES): matrix_to_triples,
    (ENC_TRIPLES, ENC_TRIPODS): triples_to_tripods,
    (ENC_TRIPODS, ENC_TRIPLES): tripods_to_triples,
    (ENC_TRIPLES, ENC_MATCHING): triples_to_matching,
    (ENC_PUZZLE, ENC_TRIPLES): puzzle_to_triples,
    (ENC_TRIPLES, ENC_PUZZLE): triples_to_puzzle,
}


def encoding_of(obj) -> str:
    return {
        TripleSet: ENC_TRIPLES,
        TripodSet: ENC_TRIPODS,
        MonotoneMatrix: ENC_MATRIX,
        MatchingInstance: ENC_MATCHING,
        PuzzleState: ENC_PUZZLE,
    }[type(obj)]


def convert(obj, to: str):
    """Convert between encodings, routing through triples when needed.

    The source must verify; the produced object is verified before return.
    """
    src = encoding_of(obj)
    if not verify(obj):
        raise ValueError(f"source {src} object does not verify: {verify(obj).reason}")
    if src == to:
        return obj
    if (src, to) in _CONVERTERS:
        out = _CONVERTERS[(src, to)](obj)
    elif (src, ENC_TRIPLES) in _CONVERTERS and (ENC_TRIPLES, to) in _CONVERTERS:
        out = _CONVERTERS[(ENC_TRIPLES, to)](_CONVERTERS[(src, ENC_TRIPLES)](obj))
    else:
        raise ValueError(f"no conversion from {src} to {to}")
    vd = verify(out)
    if not vd:
        raise AssertionError(f"conversion {src}->{to} produced invalid object: {vd.reason}")
    return out


# --- exact maxima ----------------------------------------------------------

DEFAULT_BRUTE_CAP = 4


def _max_compatible(candidates: list[Triple], ok) -> tuple[int, list[Triple]]:
    """Largest pairwise-ok subset via the independent-set engine."""
    n = len(candidates)
    adjacency = [0] * n
    for i, j in combinations(range(n), 2):
        if not ok(candidates[i], candidates[j]):
            adjacency[i] |= 1 << j
            adjacency[j] |= 1 << i
    res = solve_mis(adjacency, budget=DEFAULT_NODE_BUDGET)
    if not res.exact:
        raise RuntimeError("brute-force search exceeded its node budget")
    return res.size, [candidates[i] for i in res.vertices]


def brute_force_max(encoding: str, n: int, cap: int = DEFAULT_BRUTE_CAP):
    """Exact maximum for one encoding at size n; returns (count, witness)."""
    if n > cap:
        raise ValueError(f"n={n} above the brute-force cap {cap}")
    cube = [tuple(t) for t in product(range(1, n + 1), repeat=3)]
    if encoding == ENC_TRIPLES:
        size, wit = _max_compatible(cube, two_comparable)
        return size, TripleSet.of(n, wit)
    if encoding == ENC_TRIPODS:
        size, wit = _max_compatible(cube, lambda a, b: rays_disjoint(a, b, n))
        return size, TripodSet.of(n, wit)
    if encoding == ENC_MATRIX:
        size, wit = _max_compatible(cube, matrix_pair_ok)
        return size, MonotoneMatrix.of(n, wit)
    if encoding == ENC_PUZZLE:
        result = search_best(Grid(GRID_SQUARE, n), TACO_NESTED, "dfs-exact")
        if not result.exact:
            raise RuntimeError("puzzle search exceeded its node budget")
        return result.state.score, result.state
    raise ValueError(f"no brute-force search for encoding {encoding!r}")


def embed_lower_right(state: PuzzleState) -> PuzzleState:
    """Re-play a square-grid taco+nested solution on a triangular grid of
    side 2(n+1), shifted into the lower-right quadrant, which additionally
    avoids bat and ears at no cost in score."""
    if state.grid.kind != GRID_SQUARE:
        raise ValueError("embedding expects a square-grid solution")
    if state.x.mask != TACO_NESTED.mask:
        raise ValueError("embedding expects the taco+nested puzzle")
    n = state.grid.n
    shift = n + 1
    big = Grid(GRID_TRIANGULAR, 2 * (n + 1))
    rounds = [[(x + shift, y) for x, y in sorted(r)] for r in state.rounds]
    out = replay(big, TACO_NESTED_BAT_EARS, rounds)
    assert out.score == state.score
    return out


def half_power_triples(n: int) -> TripleSet:
    """A pairwise 2-comparable family of size n^(3/2) when n is a square.

    Digits u, v, w in {0..k-1} map to (uk+v, vk+w, wk+u) + 1: any two
    distinct digit triples agree in at most one rotated digit pair, which
    forces two coordinate comparisons to point the same way.
    """
    k = round(n ** 0.5)
    if k * k != n:
        raise ValueError(f"n must be a perfect square, got {n}")
    triples = [
        (u * k + v + 1, v * k + w + 1, w * k + u + 1)
        for u in range(k)
        for v in range(k)
        for w in range(k)
    ]
    return TripleSet.of(n, triples)


def from_json(data: dict):
    enc = data.get("encoding")
    if enc == ENC_TRIPLES:
        return TripleSet.of(int(data["n"]), (tuple(t) for t in data["triples"]))
    if enc == ENC_TRIPODS:
        return TripodSet.of(int(data["n"]), (tuple(t) for t in data["tops"]))
    if enc == ENC_MATRIX:
        return MonotoneMatrix.of(int(data["n"]), (tuple(e) for e in data["entries"]))
    if enc == ENC_MATCHING:
        return MatchingInstance.of(
            int(data["n"]), ([(a, b) for a, b in part] for part in data["partition"])
        )
    raise ValueError(f"unknown encoding in file: {enc!r}")
