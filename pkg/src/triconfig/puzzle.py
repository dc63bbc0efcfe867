"""The dot puzzle: grids, rounds, kill rules, and solution search.

A puzzle on a size-n grid runs for at most n rounds.  Round i stands for
the i-th bottom vertex of a 2n-gon split into n top and n bottom vertices
(tops numbered left to right, bottoms right to left); the grid point
(x, y) stands for the triangle on tops y and x plus that bottom vertex.
Whether two plays conflict is therefore never hand-coded: the pair of
triangles is classified by :func:`triconfig.core.classify_pair` and the
result is checked against the forbidden set.  The coordinate "regions"
this induces around a point (same row kills this, lower-left corner kills
that, ...) can be dumped with :func:`region_table` for documentation, but
they are outputs of the classifier, not inputs.

Two grids are supported.  The triangular grid is the faithful one:
points (x, y) with 1 <= y < x <= n.  The square grid {1..n}^2 is the
variant used by the value-grid equivalences; it is played with the same
relative rules, realised by shifting the square diagonally onto a larger
triangular grid (x, y) -> (x + n, y), which leaves every row/column/order
relation intact.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .core import ConfigKind, ConvexArena, ForbiddenSet, Triangle, classify_pair

Point = tuple[int, int]

GRID_TRIANGULAR = "triangular"
GRID_SQUARE = "square"

DEFAULT_SEARCH_BUDGET = 2_000_000

STRATEGY_GREEDY = "greedy-rounds"
STRATEGY_RANDOM = "randomized-restart"
STRATEGY_DFS = "dfs-exact"


@dataclass(frozen=True)
class Grid:
    """Grid kind plus side length; owns the point set and the round cap."""

    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind not in (GRID_TRIANGULAR, GRID_SQUARE):
            raise ValueError(f"unknown grid kind: {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"grid side must be positive, got {self.n}")

    def points(self) -> list[Point]:
        if self.kind == GRID_TRIANGULAR:
            return [(x, y) for y in range(1, self.n) for x in range(y + 1, self.n + 1)]
        return [(x, y) for y in range(1, self.n + 1) for x in range(1, self.n + 1)]

    def __contains__(self, p: Point) -> bool:
        x, y = p
        if self.kind == GRID_TRIANGULAR:
            return 1 <= y < x <= self.n
        return 1 <= x <= self.n and 1 <= y <= self.n

    @property
    def max_rounds(self) -> int:
        return self.n

    def embed(self, p: Point) -> Point:
        """Map to triangular coordinates (identity on the triangular grid)."""
        if self.kind == GRID_TRIANGULAR:
            return p
        x, y = p
        return (x + self.n, y)

    @property
    def embedded_side(self) -> int:
        return self.n if self.kind == GRID_TRIANGULAR else 2 * self.n

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> "Grid":
        return cls(kind=data["kind"], n=int(data["n"]))


def triangle_of(grid: Grid, round_i: int, p: Point) -> Triangle:
    """Triangle represented by playing p in the given round.

    On a triangular grid of side n the arena is the top/bottom 2n-gon:
    tops T_1..T_n are indices 0..n-1 and bottoms B_1..B_n are n..2n-1,
    so (x, y) in round i is {y-1, x-1, n+i-1}.  Square grids go through
    their diagonal embedding first.
    """
    if p not in grid:
        raise ValueError(f"point {p} is not on the {grid.kind} grid of side {grid.n}")
    if not 1 <= round_i <= grid.max_rounds:
        raise ValueError(f"round {round_i} out of range 1..{grid.max_rounds}")
    x, y = grid.embed(p)
    side = grid.embedded_side
    return Triangle.of(y - 1, x - 1, side + round_i - 1)


@lru_cache(maxsize=None)
def _kind_for_pattern(ranks: tuple[int, int, int, int], same_round: bool) -> ConfigKind:
    """Pair class as a function of the order pattern of (y_p, x_p, y_q, x_q).

    Classification of the two represented triangles depends only on the
    relative order of the four top indices and on whether the bottoms
    coincide, so a canonical instance on a 10-gon settles each pattern.
    """
    yp, xp, yq, xq = ranks
    arena = ConvexArena(10)  # 5 tops is enough for ranks 1..4
    t1 = Triangle.of(yp - 1, xp - 1, 5)
    t2 = Triangle.of(yq - 1, xq - 1, 5 if same_round else 6)
    return classify_pair(arena, t1, t2)


def _rank_pattern(p: Point, q: Point) -> tuple[int, int, int, int]:
    values = (p[1], p[0], q[1], q[0])  # (y_p, x_p, y_q, x_q)
    scale = {v: i + 1 for i, v in enumerate(sorted(set(values)))}
    return tuple(scale[v] for v in values)  # type: ignore[return-value]


def same_round_kind(grid: Grid, p: Point, q: Point) -> ConfigKind:
    """Class formed by two distinct points played in the same round."""
    if p == q:
        raise ValueError(f"same-round pair must be distinct, got {p} twice")
    return _kind_for_pattern(_rank_pattern(grid.embed(p), grid.embed(q)), True)


def cross_round_kind(grid: Grid, p_earlier: Point, q_later: Point) -> ConfigKind:
    """Class formed by p played in some round and q in any later round."""
    return _kind_for_pattern(
        _rank_pattern(grid.embed(p_earlier), grid.embed(q_later)), False
    )


def same_round_conflict(grid: Grid, x: ForbiddenSet, p: Point, q: Point) -> bool:
    return same_round_kind(grid, p, q) in x


def cross_round_conflict(grid: Grid, x: ForbiddenSet, p: Point, q: Point) -> bool:
    return cross_round_kind(grid, p, q) in x


def killed_set(grid: Grid, x: ForbiddenSet, played: Iterable[Point]) -> set[Point]:
    """Points that can no longer be played after ``played`` went down."""
    played = list(played)
    return {
        q
        for q in grid.points()
        if any(cross_round_conflict(grid, x, p, q) for p in played)
    }


def killed_causes(
    grid: Grid, x: ForbiddenSet, played: Sequence[Point]
) -> dict[Point, tuple[Point, ConfigKind]]:
    """Like :func:`killed_set`, but names the first offending earlier point."""
    causes: dict[Point, tuple[Point, ConfigKind]] = {}
    for q in grid.points():
        for p in played:
            kind = cross_round_kind(grid, p, q)
            if kind in x:
                causes[q] = (p, kind)
                break
    return causes


def survivors_set(grid: Grid, x: ForbiddenSet, played: Iterable[Point]) -> set[Point]:
    return set(grid.points()) - killed_set(grid, x, played)


class PuzzleViolation(ValueError):
    """A rejected play, carrying the offending points and their class."""

    def __init__(self, reason: str, points: tuple[Point, ...], kind: ConfigKind | None):
        self.reason = reason
        self.points = points
        self.kind = kind
        pretty = " vs ".join(str(p) for p in points)
        name = kind.mnemonic if kind else "-"
        super().__init__(f"{reason}: {pretty} ({name})")

    def to_json(self) -> dict:
        return {
            "reason": self.reason,
            "points": [list(p) for p in self.points],
            "config": self.kind.mnemonic if self.kind else None,
        }


@dataclass(frozen=True)
class PuzzleState:
    """Immutable snapshot of a game: history, killed set, score."""

    grid: Grid
    x: ForbiddenSet
    rounds: tuple[frozenset[Point], ...] = ()
    killed: frozenset[Point] = frozenset()

    @classmethod
    def new(cls, grid: Grid, x: ForbiddenSet) -> "PuzzleState":
        return cls(grid=grid, x=x)

    @property
    def score(self) -> int:
        return sum(len(r) for r in self.rounds)

    def played(self) -> list[Point]:
        out: list[Point] = []
        for r in self.rounds:
            out.extend(sorted(r))
        return out

    def survivors(self) -> set[Point]:
        return set(self.grid.points()) - set(self.killed)

    def play_round(self, points: Iterable[Point]) -> "PuzzleState":
        """Validate and append one round; returns the successor state."""
        pts = sorted({(int(a), int(b)) for a, b in points})
        if len(self.rounds) >= self.grid.max_rounds:
            raise PuzzleViolation("round limit reached", (), None)
        for p in pts:
            if p not in self.grid:
                raise ValueError(f"point {p} is not on the grid")
        for p in pts:
            if p in self.killed:
                cause = self._cause_of(p)
                raise PuzzleViolation(
                    "point is killed", (cause[0], p) if cause else (p,),
                    cause[1] if cause else None,
                )
        for p, q in combinations(pts, 2):
            kind = same_round_kind(self.grid, p, q)
            if kind in self.x:
                raise PuzzleViolation("same-round conflict", (p, q), kind)
        newly_killed = {
            q
            for q in self.survivors()
            if any(cross_round_conflict(self.grid, self.x, p, q) for p in pts)
        }
        return PuzzleState(
            grid=self.grid,
            x=self.x,
            rounds=self.rounds + (frozenset(pts),),
            killed=self.killed | newly_killed,
        )

    def _cause_of(self, q: Point) -> tuple[Point, ConfigKind] | None:
        for r in self.rounds:
            for p in sorted(r):
                kind = cross_round_kind(self.grid, p, q)
                if kind in self.x:
                    return (p, kind)
        return None

    def undo(self) -> "PuzzleState":
        """Drop the last round, rebuilding the killed set from scratch."""
        if not self.rounds:
            raise ValueError("nothing to undo")
        state = PuzzleState.new(self.grid, self.x)
        for r in self.rounds[:-1]:
            state = state.play_round(r)
        return state

    def killed_with_causes(self) -> dict[Point, tuple[Point, ConfigKind]]:
        return killed_causes(self.grid, self.x, self.played())

    def to_json(self) -> dict:
        return {
            "grid": self.grid.to_json(),
            "X": [k.mnemonic for k in self.x],
            "rounds": [[list(p) for p in sorted(r)] for r in self.rounds],
        }

    def state_hash(self) -> str:
        payload = {
            "grid": self.grid.to_json(),
            "X": self.x.mnemonics(),
            "rounds": [[list(p) for p in sorted(r)] for r in self.rounds],
            "killed": [list(p) for p in sorted(self.killed)],
            "score": self.score,
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def replay(grid: Grid, x: ForbiddenSet, rounds: Iterable[Iterable[Point]]) -> PuzzleState:
    """Validate a full solution round by round."""
    state = PuzzleState.new(grid, x)
    for r in rounds:
        state = state.play_round(r)
    return state


def solution_to_json(state: PuzzleState) -> dict:
    return state.to_json()


def solution_from_json(data: dict) -> PuzzleState:
    """Load and re-validate a solution file; raises on the first violation."""
    grid = Grid.from_json(data["grid"])
    x = ForbiddenSet.parse(",".join(data.get("X", [])) or "none")
    rounds = [[(int(p[0]), int(p[1])) for p in r] for r in data.get("rounds", [])]
    return replay(grid, x, rounds)


@dataclass
class SearchResult:
    state: PuzzleState
    exact: bool
    nodes: int


def _greedy_state(grid: Grid, x: ForbiddenSet, rng: random.Random) -> PuzzleState:
    state = PuzzleState.new(grid, x)
    for _ in range(grid.max_rounds):
        survivors = sorted(state.survivors())
        if not survivors:
            break
        rng.shuffle(survivors)
        chosen: list[Point] = []
        for q in survivors:
            if all(not same_round_conflict(grid, x, p, q) for p in chosen):
                chosen.append(q)
        state = state.play_round(chosen)
    return state


def search_best(
    grid: Grid,
    x: ForbiddenSet,
    strategy: str = STRATEGY_GREEDY,
    budget: int = DEFAULT_SEARCH_BUDGET,
    seed: int = 0,
) -> SearchResult:
    """Search for a high-scoring legal final state.

    ``greedy-rounds`` fills each round greedily in a seed-shuffled order;
    ``randomized-restart`` repeats that with derived seeds and keeps the
    best; ``dfs-exact`` finds the true maximum by memoized search (small
    grids only) and falls back to greedy, flagged inexact, if the node
    budget runs out.
    """
    if strategy == STRATEGY_GREEDY:
        return SearchResult(_greedy_state(grid, x, random.Random(seed)), False, 0)
    if strategy == STRATEGY_RANDOM:
        per_restart = max(1, len(grid.points()) * grid.max_rounds)
        restarts = max(1, min(2000, budget // per_restart))
        best: PuzzleState | None = None
        for k in range(restarts):
            cand = _greedy_state(grid, x, random.Random(seed * 1_000_003 + k))
            if best is None or cand.score > best.score:
                best = cand
        assert best is not None
        return SearchResult(best, False, restarts)
    if strategy == STRATEGY_DFS:
        return _dfs_exact(grid, x, budget, seed)
    raise ValueError(f"unknown strategy: {strategy!r}")


class _Budget(Exception):
    pass


def _dfs_exact(grid: Grid, x: ForbiddenSet, budget: int, seed: int) -> SearchResult:
    points = sorted(grid.points())
    index = {p: i for i, p in enumerate(points)}
    kill_mask: dict[Point, int] = {}
    for p in points:
        mask = 0
        for q in points:
            if cross_round_conflict(grid, x, p, q):
                mask |= 1 << index[q]
        kill_mask[p] = mask
    full = (1 << len(points)) - 1
    nodes = 0

    def round_choices(surv_mask: int) -> list[tuple[Point, ...]]:
        surv = [p for p in points if surv_mask >> index[p] & 1]
        out: list[tuple[Point, ...]] = []

        def build(i: int, cur: list[Point]) -> None:
            out.append(tuple(cur))
            for j in range(i, len(surv)):
                q = surv[j]
                if all(not same_round_conflict(grid, x, p, q) for p in cur):
                    cur.append(q)
                    build(j + 1, cur)
                    cur.pop()

        build(0, [])
        return out

    memo: dict[tuple[int, int], tuple[int, tuple[Point, ...]]] = {}

    def solve(surv_mask: int, rounds_left: int) -> tuple[int, tuple[Point, ...]]:
        nonlocal nodes
        if rounds_left == 0 or surv_mask == 0:
            return 0, ()
        key = (surv_mask, rounds_left)
        hit = memo.get(key)
        if hit is not None:
            return hit
        nodes += 1
        if nodes > budget:
            raise _Budget
        best_score, best_first = -1, ()
        for sub in round_choices(surv_mask):
            nxt = surv_mask
            for p in sub:
                nxt &= ~kill_mask[p]
            tail, _ = solve(nxt, rounds_left - 1)
            if len(sub) + tail > best_score:
                best_score, best_first = len(sub) + tail, sub
        memo[key] = (best_score, best_first)
        return memo[key]

    try:
        solve(full, grid.max_rounds)
        state = PuzzleState.new(grid, x)
        surv_mask = full
        for _ in range(grid.max_rounds):
            _, first = solve(surv_mask, grid.max_rounds - len(state.rounds))
            state = state.play_round(first)
            for p in first:
                surv_mask &= ~kill_mask[p]
        return SearchResult(state, True, nodes)
    except _Budget:
        fallback = _greedy_state(grid, x, random.Random(seed))
        return SearchResult(fallback, False, nodes)


def gamma_free_check(points: Iterable[Point]) -> bool:
    """True iff no a=(x0,y0), b=(x0,y1), c=(x1,y1) with y0<y1 and x0<x1."""
    pts = set(points)
    by_col: dict[int, list[int]] = {}
    by_row: dict[int, list[int]] = {}
    for x, y in pts:
        by_col.setdefault(x, []).append(y)
        by_row.setdefault(y, []).append(x)
    for x0, ys in by_col.items():
        for y0 in ys:
            for y1 in ys:
                if y0 < y1 and any(x1 > x0 for x1 in by_row.get(y1, ())):
                    return False
    return True


def lazy_l_free_check(points: Iterable[Point]) -> bool:
    """True iff no column pair a=(x0,y0), b=(x0,y1) with y1>y0 has a third
    point c with x_c > x0 and y_c < y1 (c strictly right of the column and
    strictly below the pair's top point).

    It suffices to test each column's top point as b: any c below a lesser
    pair top is also below the column maximum.
    """
    pts = sorted(set(points))
    by_col: dict[int, list[int]] = {}
    for x, y in pts:
        by_col.setdefault(x, []).append(y)
    for x0, ys in by_col.items():
        if len(ys) < 2:
            continue
        y1 = max(ys)
        if any(xc > x0 and yc < y1 for xc, yc in pts):
            return False
    return True


def _max_subset_free(n: int, check) -> tuple[int, set[Point]]:
    """Largest subset of {1..n}^2 passing ``check``; plain DFS with bound."""
    cells = [(x, y) for x in range(1, n + 1) for y in range(1, n + 1)]
    best: tuple[int, set[Point]] = (0, set())
    chosen: set[Point] = set()

    def rec(i: int) -> None:
        nonlocal best
        if len(chosen) + (len(cells) - i) <= best[0]:
            return
        if i == len(cells):
            if len(chosen) > best[0]:
                best = (len(chosen), set(chosen))
            return
        p = cells[i]
        chosen.add(p)
        if check(chosen):
            rec(i + 1)
        chosen.discard(p)
        rec(i + 1)

    rec(0)
    return best


def max_gamma_free(n: int) -> tuple[int, set[Point]]:
    return _max_subset_free(n, gamma_free_check)


def max_lazy_l_free(n: int) -> tuple[int, set[Point]]:
    return _max_subset_free(n, lazy_l_free_check)


def region_table(grid: Grid, p: Point) -> dict[str, dict[str, str]]:
    """Documentation dump: the class every other cell forms with p.

    Keys are "x,y"; values carry the same-round class and the class if the
    cell were played in a later round than p.  This is emitted from the
    classifier so figures can be regenerated, never consulted as a rule
    source.
    """
    if p not in grid:
        raise ValueError(f"point {p} is not on the grid")
    table: dict[str, dict[str, str]] = {}
    for q in grid.points():
        entry = {}
        if q != p:
            entry["same_round"] = same_round_kind(grid, p, q).mnemonic
        entry["later_round"] = cross_round_kind(grid, p, q).mnemonic
        table[f"{q[0]},{q[1]}"] = entry
    return table
