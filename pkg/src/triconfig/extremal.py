"""Conflict graphs over triangle families and exact extremal counts.

``ex(n, x)`` is the independence number of the conflict graph on all
triangles of an n-vertex arena, where two triangles are adjacent when
their pair class lands in the forbidden set ``x``.  ``ex_prime`` is the
same count restricted to the top/bottom family: two vertices in the top
half of the polygon, one in the bottom half.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from .core import ConvexArena, ForbiddenSet, Triangle, classify_pair
from .misolver import DEFAULT_NODE_BUDGET, solve_mis

FAMILY_ALL = "all-triangles"
FAMILY_TOP_BOTTOM = "top-bottom"
DEFAULT_VERTEX_CAP = 2000


@dataclass(frozen=True)
class TopBottomArena:
    """An arena split into a contiguous top arc and bottom arc.

    The top half is the first ceil(m/2) indices, the bottom half the rest;
    admissible triangles take two top vertices and one bottom vertex.
    """

    m: int

    def __post_init__(self) -> None:
        if self.m < 3:
            raise ValueError(f"need at least 3 vertices, got {self.m}")

    @property
    def top_count(self) -> int:
        return (self.m + 1) // 2

    @property
    def bottom_count(self) -> int:
        return self.m // 2

    def tops(self) -> range:
        return range(self.top_count)

    def bottoms(self) -> range:
        return range(self.top_count, self.m)

    def triangles(self) -> Iterator[Triangle]:
        for a, b in combinations(self.tops(), 2):
            for c in self.bottoms():
                yield Triangle(a, b, c)


@dataclass
class ConflictGraph:
    """Triangles as vertices; edges between pairs whose class is forbidden."""

    arena_m: int
    x: ForbiddenSet
    family: str
    vertices: list[Triangle]
    adjacency: list[int]  # bitset per vertex

    def edge_count(self) -> int:
        return sum(bits.bit_count() for bits in self.adjacency) // 2

    def vertex_count(self) -> int:
        return len(self.vertices)


@dataclass
class SolveResult:
    optimum: int
    witness: list[Triangle]
    nodes_explored: int
    millis: float
    exact: bool
    n: int = 0
    x: ForbiddenSet = field(default_factory=ForbiddenSet.none)
    family: str = FAMILY_ALL

    def to_json_record(self) -> dict:
        return {
            "n": self.n,
            "X": self.x.mnemonics(),
            "optimum": self.optimum,
            "exact": self.exact,
            "witness": [list(t) for t in self.witness],
            "nodes": self.nodes_explored,
            "millis": round(self.millis, 3),
        }

    def to_csv_row(self) -> list:
        return [
            self.n,
            self.x.mnemonics(),
            self.optimum,
            int(self.exact),
            " ".join("-".join(map(str, t)) for t in self.witness),
            self.nodes_explored,
            round(self.millis, 3),
        ]


def family_triangles(m: int, family: str) -> list[Triangle]:
    if family == FAMILY_ALL:
        return list(ConvexArena(m).triangles())
    if family == FAMILY_TOP_BOTTOM:
        return list(TopBottomArena(m).triangles())
    raise ValueError(f"unknown family filter: {family!r}")


def build_conflict_graph(
    arena: ConvexArena | int,
    x: ForbiddenSet,
    family: str = FAMILY_ALL,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
) -> ConflictGraph:
    """Classify every pair in the chosen family and record forbidden ones."""
    m = arena.m if isinstance(arena, ConvexArena) else int(arena)
    conv = ConvexArena(m)
    vertices = sorted(family_triangles(m, family))
    if len(vertices) > vertex_cap:
        raise ValueError(
            f"family has {len(vertices)} triangles, above the cap of {vertex_cap}"
        )
    adjacency = [0] * len(vertices)
    for i, j in combinations(range(len(vertices)), 2):
        if classify_pair(conv, vertices[i], vertices[j]) in x:
            adjacency[i] |= 1 << j
            adjacency[j] |= 1 << i
    return ConflictGraph(m, x, family, vertices, adjacency)


def max_independent_set(
    graph: ConflictGraph,
    budget: int = DEFAULT_NODE_BUDGET,
    canonical_witness: bool = False,
) -> SolveResult:
    """Exact maximum independent set of a conflict graph.

    With ``canonical_witness`` the witness is the lexicographically least
    optimum set (triangles compare as sorted index triples), pinned down by
    re-solving with successive forced inclusions; without it the witness is
    still deterministic, just engine-defined.
    """
    t0 = time.perf_counter()
    res = solve_mis(graph.adjacency, budget=budget)
    witness_ids = res.vertices
    if canonical_witness and res.exact:
        witness_ids = _lex_min_witness(graph.adjacency, res.size, budget)
    millis = (time.perf_counter() - t0) * 1000.0
    return SolveResult(
        optimum=res.size,
        witness=[graph.vertices[i] for i in witness_ids],
        nodes_explored=res.nodes,
        millis=millis,
        exact=res.exact,
        n=graph.arena_m,
        x=graph.x,
        family=graph.family,
    )


def _lex_min_witness(adjacency: list[int], optimum: int, budget: int) -> list[int]:
    n = len(adjacency)
    chosen: list[int] = []
    allowed = (1 << n) - 1
    remaining = optimum
    for v in range(n):
        if remaining == 0:
            break
        if not (allowed >> v) & 1:
            continue
        sub = allowed & ~adjacency[v] & ~(1 << v)
        r = solve_mis(adjacency, budget=budget, restrict=sub)
        if r.exact and r.size >= remaining - 1:
            chosen.append(v)
            allowed = sub
            remaining -= 1
    return chosen


def ex(
    n: int,
    x: ForbiddenSet,
    budget: int = DEFAULT_NODE_BUDGET,
    canonical_witness: bool = False,
) -> SolveResult:
    """Largest triangle family on an n-gon with no pair classing into x."""
    graph = build_conflict_graph(n, x, FAMILY_ALL)
    return max_independent_set(graph, budget, canonical_witness)


def ex_prime(
    n: int,
    x: ForbiddenSet,
    budget: int = DEFAULT_NODE_BUDGET,
    canonical_witness: bool = False,
) -> SolveResult:
    """Same as :func:`ex` but over the top/bottom family only."""
    graph = build_conflict_graph(n, x, FAMILY_TOP_BOTTOM)
    return max_independent_set(graph, budget, canonical_witness)
