"""Generators for the explicit lower-bound constructions, each self-verified.

Every construction carries the forbidden set it claims to avoid and a
closed-form size.  ``generate`` never hands back an unchecked object:
triangle families go through :func:`verify_family`, puzzle solutions are
produced by replaying rounds through the game engine (which validates
them), and the triple-set construction is checked by its own verifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .core import ConfigKind, ConvexArena, ForbiddenSet, Triangle, verify_family
from .puzzle import GRID_TRIANGULAR, Grid, PuzzleState, replay
from .tripods import TripleSet, half_power_triples, verify_triples

Output = Union[list[Triangle], PuzzleState, TripleSet]

OUT_FAMILY = "family"
OUT_PUZZLE = "puzzle"
OUT_TRIPLES = "triples"


@dataclass(frozen=True)
class ConstructionSpec:
    id: str
    n: int


@dataclass(frozen=True)
class _Entry:
    output: str
    claimed_x: ForbiddenSet | None
    min_n: int
    size: Callable[[int], int]
    build: Callable[[int], Output]
    note: str


def _fan(n: int) -> list[Triangle]:
    return [Triangle.of(0, i, i + 1) for i in range(1, n - 1)]


def _linear_taco(n: int) -> list[Triangle]:
    return [Triangle.of(0, 1, i) for i in range(2, n)]


def _linear_bat(n: int) -> list[Triangle]:
    return [Triangle.of(0, 2 * i - 1, 2 * i) for i in range(1, n // 2)]


def _linear_nested(n: int) -> list[Triangle]:
    return [Triangle.of(0, j, n - j) for j in range(1, n // 2)]


def _linear_crossing(n: int) -> list[Triangle]:
    return [Triangle.of(0, j, n // 2 + j) for j in range(1, n // 2)]


def _linear_ears(n: int) -> list[Triangle]:
    return [Triangle.of(3 * j, 3 * j + 1, 3 * j + 2) for j in range(n // 3)]


def _linear_swords(n: int) -> list[Triangle]:
    third = n // 3
    return [
        Triangle.of(i - 1, third + 2 * i - 2, third + 2 * i - 1)
        for i in range(1, third + 1)
    ]


def _linear_david(n: int) -> list[Triangle]:
    third = n // 3
    return [
        Triangle.of(i - 1, third + i - 1, 2 * n // 3 + i - 1)
        for i in range(1, third + 1)
    ]


def _pairwise_crossing(n: int) -> list[Triangle]:
    k = n // 3
    return [
        Triangle.of(a, b, c)
        for a in range(k)
        for b in range(k, 2 * k)
        for c in range(2 * k, 3 * k)
    ]


def _diag_lines_rounds(n: int) -> list[list[tuple[int, int]]]:
    # lower-right quadrant, swept by anti-diagonal from the far corner inward
    half = n // 2
    quad = [(x, y) for x in range(half + 1, n + 1) for y in range(1, half + 1)]
    sums = sorted({x + y for x, y in quad}, reverse=True)
    return [[p for p in quad if p[0] + p[1] == s] for s in sums]


def _quadrant_rounds(n: int) -> list[list[tuple[int, int]]]:
    q1 = [
        (x, y)
        for y in range(1, n)
        for x in range(y + 1, n + 1)
        if 2 * x > n and 2 * y < n
    ]
    return [q1]


def _repeated_diagonal_rounds(n: int) -> list[list[tuple[int, int]]]:
    diag = [(2 * j, 2 * j - 1) for j in range(1, n // 2 + 1)]
    return [diag for _ in range(n)]


def _shifted_diagonal_rounds(n: int) -> list[list[tuple[int, int]]]:
    shifted = [(n // 2 + j, j) for j in range(1, n // 2 + 1)]
    return [shifted for _ in range(n)]


_X = ForbiddenSet.of
_K = ConfigKind

_REGISTRY: dict[str, _Entry] = {
    "fan": _Entry(
        OUT_FAMILY,
        _X(_K.TACO, _K.NESTED, _K.CROSSING, _K.SWORDS, _K.DAVID),
        3,
        lambda n: n - 2,
        _fan,
        "triangulation fan from one vertex; pairs are only bat or mariposa",
    ),
    "linear-taco": _Entry(
        OUT_FAMILY, ForbiddenSet.all().without_kind(_K.TACO), 3,
        lambda n: n - 2, _linear_taco, "all triangles on one fixed edge",
    ),
    "linear-bat": _Entry(
        OUT_FAMILY, ForbiddenSet.all().without_kind(_K.BAT), 4,
        lambda n: n // 2 - 1, _linear_bat, "disjoint short ears hung on one apex",
    ),
    "linear-nested": _Entry(
        OUT_FAMILY, ForbiddenSet.all().without_kind(_K.NESTED), 4,
        lambda n: n // 2 - 1, _linear_nested, "nested chords from one apex",
    ),
    "linear-crossing": _Entry(
        OUT_FAMILY, ForbiddenSet.all().without_kind(_K.CROSSING), 4,
        lambda n: n // 2 - 1, _linear_crossing, "rotating chords from one apex",
    ),
    "linear-ears": _Entry(
        OUT_FAMILY, ForbiddenSet.all().without_kind(_K.EARS), 3,
        lambda n: n // 3, _linear_ears, "disjoint consecutive triples",
    ),
    "linear-swords": _Entry(
        OUT_FAMILY, ForbiddenSet.all().without_kind(_K.SWORDS), 3,
        lambda n: n // 3, _linear_swords, "staggered blades",
    ),
    "linear-david": _Entry(
        OUT_FAMILY, ForbiddenSet.all().without_kind(_K.DAVID), 3,
        lambda n: n // 3, _linear_david, "rotating equilateral-ish stars",
    ),
    "pairwise-crossing": _Entry(
        OUT_FAMILY,
        _X(_K.EARS, _K.BAT, _K.MARIPOSA),
        3,
        lambda n: (n // 3) ** 3,
        _pairwise_crossing,
        "one vertex in each of three contiguous blocks of floor(n/3)",
    ),
    "diag-lines": _Entry(
        OUT_PUZZLE,
        _X(_K.TACO, _K.DAVID, _K.CROSSING, _K.BAT, _K.EARS),
        2,
        lambda n: (n - n // 2) * (n // 2),
        _diag_lines_rounds,
        "anti-diagonals of the lower-right quadrant, swept inward",
    ),
    "quadrant": _Entry(
        OUT_PUZZLE,
        _X(_K.SWORDS, _K.BAT, _K.EARS, _K.DAVID),
        3,
        lambda n: (n - n // 2) * ((n - 1) // 2),
        _quadrant_rounds,
        "everything strictly right of and below the middle, in one round",
    ),
    "repeated-diagonal": _Entry(
        OUT_PUZZLE,
        _X(_K.DAVID, _K.NESTED, _K.CROSSING),
        2,
        lambda n: n * (n // 2),
        _repeated_diagonal_rounds,
        "every second point of the diagonal y=x-1, replayed every round",
    ),
    "shifted-diagonal": _Entry(
        OUT_PUZZLE,
        _X(_K.BAT, _K.NESTED, _K.EARS),
        2,
        lambda n: n * (n // 2),
        _shifted_diagonal_rounds,
        "the lower-right quadrant diagonal, replayed every round",
    ),
    "tripod-half": _Entry(
        OUT_TRIPLES,
        None,
        1,
        lambda n: round(n ** 0.5) ** 3,
        half_power_triples,
        "digit-rotation family of pairwise 2-comparable triples",
    ),
}

LINEAR_IDS = tuple(f"linear-{k.mnemonic}" for k in ConfigKind if k is not ConfigKind.MARIPOSA)


def construction_ids() -> list[str]:
    return list(_REGISTRY)


def _entry(spec: ConstructionSpec) -> _Entry:
    try:
        return _REGISTRY[spec.id]
    except KeyError:
        raise ValueError(f"unknown construction id: {spec.id!r}") from None


def output_kind(spec: ConstructionSpec) -> str:
    return _entry(spec).output


def claimed_forbidden(spec: ConstructionSpec) -> ForbiddenSet | None:
    return _entry(spec).claimed_x


def size_formula(spec: ConstructionSpec) -> int:
    entry = _entry(spec)
    _check_n(spec, entry)
    return entry.size(spec.n)


def _check_n(spec: ConstructionSpec, entry: _Entry) -> None:
    if spec.n < entry.min_n:
        raise ValueError(
            f"{spec.id} needs n >= {entry.min_n}, got {spec.n}"
        )
    if spec.id == "tripod-half":
        k = round(spec.n ** 0.5)
        if k * k != spec.n:
            raise ValueError(f"tripod-half needs a square n, got {spec.n}")
    if entry.size(spec.n) <= 0:
        raise ValueError(f"{spec.id} degenerates to an empty output at n={spec.n}")


def generate(spec: ConstructionSpec) -> Output:
    """Build the construction and verify it against its claimed forbidden set."""
    entry = _entry(spec)
    _check_n(spec, entry)
    if entry.output == OUT_FAMILY:
        family = entry.build(spec.n)
        verdict = verify_family(ConvexArena(spec.n), entry.claimed_x, family)
        if not verdict:
            t1, t2, kind = verdict.violations[0]
            raise AssertionError(
                f"{spec.id}(n={spec.n}) violates its claim: "
                f"{tuple(t1)} vs {tuple(t2)} is {kind.mnemonic}"
            )
        if len(family) != entry.size(spec.n):
            raise AssertionError(
                f"{spec.id}(n={spec.n}) size {len(family)} != formula {entry.size(spec.n)}"
            )
        return family
    if entry.output == OUT_PUZZLE:
        rounds = entry.build(spec.n)
        state = replay(Grid(GRID_TRIANGULAR, spec.n), entry.claimed_x, rounds)
        if state.score != entry.size(spec.n):
            raise AssertionError(
                f"{spec.id}(n={spec.n}) score {state.score} != formula {entry.size(spec.n)}"
            )
        return state
    triples = entry.build(spec.n)
    verdict = verify_triples(triples)
    if not verdict:
        raise AssertionError(f"{spec.id}(n={spec.n}) invalid: {verdict.reason}")
    if len(triples.triples) != entry.size(spec.n):
        raise AssertionError(
            f"{spec.id}(n={spec.n}) size {len(triples.triples)} != formula"
        )
    return triples


def generate_json(spec: ConstructionSpec) -> dict:
    out = generate(spec)
    entry = _entry(spec)
    if entry.output == OUT_FAMILY:
        return {
            "construction": spec.id,
            "m": spec.n,
            "X": [k.mnemonic for k in entry.claimed_x],
            "triangles": [list(t) for t in out],
        }
    if entry.output == OUT_PUZZLE:
        data = out.to_json()
        data["construction"] = spec.id
        return data
    data = out.to_json()
    data["construction"] = spec.id
    return data
