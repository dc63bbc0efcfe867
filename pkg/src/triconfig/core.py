"""Triangles on convex point sets and the eight ways a pair can interact.

A :class:`ConvexArena` is nothing more than ``m`` vertices in a fixed
clockwise cyclic order; no coordinates are stored because every question
asked here depends only on that order.  Two distinct triangles drawn on
arena vertices interact in exactly one of eight classes, grouped by how
many vertices they share:

* sharing an edge (2 vertices): ``taco``, ``mariposa``
* sharing one vertex: ``bat``, ``nested``, ``crossing``
* sharing nothing: ``ears``, ``swords``, ``david``

:func:`classify_pair` decides the class combinatorially from the cyclic
order.  :func:`classify_geometric` re-derives it from an exact planar
drawing (integer coordinates, orientation predicates, crossing counts)
and exists purely as an independent cross-check of the combinatorial
rules; the two must agree on every input.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple


class ConfigKind(enum.Enum):
    """One of the eight pair-interaction classes.

    The enum value doubles as a stable one-byte code and as the bit
    position used by :class:`ForbiddenSet` masks.
    """

    TACO = 0
    MARIPOSA = 1
    BAT = 2
    NESTED = 3
    CROSSING = 4
    EARS = 5
    SWORDS = 6
    DAVID = 7

    @property
    def code(self) -> int:
        return self.value

    @property
    def mnemonic(self) -> str:
        return self.name.lower()

    @property
    def bit(self) -> int:
        return 1 << self.value

    @classmethod
    def from_mnemonic(cls, name: str) -> "ConfigKind":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown configuration name: {name!r}") from None


ALL_KINDS: tuple[ConfigKind, ...] = tuple(ConfigKind)


@dataclass(frozen=True)
class ForbiddenSet:
    """A subset of the eight classes, encoded as an 8-bit mask."""

    mask: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.mask <= 0xFF:
            raise ValueError(f"mask out of range: {self.mask}")

    @classmethod
    def of(cls, *kinds: ConfigKind) -> "ForbiddenSet":
        mask = 0
        for k in kinds:
            mask |= k.bit
        return cls(mask)

    @classmethod
    def all(cls) -> "ForbiddenSet":
        return cls(0xFF)

    @classmethod
    def none(cls) -> "ForbiddenSet":
        return cls(0)

    @classmethod
    def parse(cls, text: str) -> "ForbiddenSet":
        """Parse a comma-separated mnemonic list; 'all' and 'none' work too."""
        text = text.strip()
        if text.lower() == "all":
            return cls.all()
        if text.lower() in ("none", ""):
            return cls.none()
        mask = 0
        for token in text.split(","):
            mask |= ConfigKind.from_mnemonic(token).bit
        return cls(mask)

    def __contains__(self, kind: ConfigKind) -> bool:
        return bool(self.mask & kind.bit)

    def __iter__(self) -> Iterator[ConfigKind]:
        return (k for k in ALL_KINDS if k in self)

    def __or__(self, other: "ForbiddenSet") -> "ForbiddenSet":
        return ForbiddenSet(self.mask | other.mask)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def issuperset(self, other: "ForbiddenSet") -> bool:
        return self.mask & other.mask == other.mask

    def with_kind(self, kind: ConfigKind) -> "ForbiddenSet":
        return ForbiddenSet(self.mask | kind.bit)

    def without_kind(self, kind: ConfigKind) -> "ForbiddenSet":
        return ForbiddenSet(self.mask & ~kind.bit)

    def mnemonics(self) -> str:
        if self.mask == 0:
            return "none"
        return ",".join(k.mnemonic for k in self)

    def __str__(self) -> str:
        return self.mnemonics()


class Triangle(NamedTuple):
    """A 3-subset of arena vertex indices, stored sorted (a < b < c)."""

    a: int
    b: int
    c: int

    @classmethod
    def of(cls, *indices: int) -> "Triangle":
        if len(indices) != 3:
            raise ValueError(f"a triangle needs 3 vertices, got {len(indices)}")
        a, b, c = sorted(indices)
        if a == b or b == c:
            raise ValueError(f"triangle vertices must be distinct: {indices}")
        return cls(a, b, c)


@dataclass(frozen=True)
class ConvexArena:
    """m vertices in convex position, indexed 0..m-1 clockwise."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 3:
            raise ValueError(f"an arena needs at least 3 vertices, got {self.m}")

    def check_triangle(self, t: Triangle) -> None:
        a, b, c = t
        if not (0 <= a < b < c < self.m):
            raise ValueError(f"triangle {tuple(t)} is not valid on {self.m} vertices")

    def triangles(self) -> Iterator[Triangle]:
        for a, b, c in combinations(range(self.m), 3):
            yield Triangle(a, b, c)


def classify_pair(arena: ConvexArena, t1: Triangle, t2: Triangle) -> ConfigKind:
    """Classify the interaction of two distinct triangles.

    Rules, by shared-vertex count s:

    * s=2: the shared pair is a chord; thirds on the same open arc of the
      chord give ``taco``, opposite arcs give ``mariposa``.
    * s=1: cut the cycle at the shared vertex and read the other four
      vertices as an A/B word; AABB is ``bat``, ABBA ``nested``,
      ABAB ``crossing``.
    * s=0: read the circular A/B word of all six vertices and count its
      maximal blocks; 2 blocks is ``ears``, 4 ``swords``, 6 ``david``.
    """
    arena.check_triangle(t1)
    arena.check_triangle(t2)
    if t1 == t2:
        raise ValueError(f"cannot classify identical triangles {tuple(t1)}")
    s1, s2 = set(t1), set(t2)
    shared = s1 & s2
    s = len(shared)
    if s == 2:
        u, v = sorted(shared)
        third1 = (s1 - shared).pop()
        third2 = (s2 - shared).pop()
        inside1 = u < third1 < v
        inside2 = u < third2 < v
        return ConfigKind.TACO if inside1 == inside2 else ConfigKind.MARIPOSA
    if s == 1:
        w = shared.pop()
        m = arena.m
        others = sorted((v - w) % m for v in (s1 | s2) if v != w)
        word = "".join("A" if (pos + w) % m in s1 else "B" for pos in others)
        if word in ("AABB", "BBAA"):
            return ConfigKind.BAT
        if word in ("ABBA", "BAAB"):
            return ConfigKind.NESTED
        return ConfigKind.CROSSING
    labels = ["A" if v in s1 else "B" for v in sorted(s1 | s2)]
    blocks = sum(1 for i in range(6) if labels[i] != labels[(i + 1) % 6])
    return {2: ConfigKind.EARS, 4: ConfigKind.SWORDS, 6: ConfigKind.DAVID}[blocks]


def _orientation(o: tuple[int, int], p: tuple[int, int], q: tuple[int, int]) -> int:
    """Sign of the cross product (p-o) x (q-o); exact integer arithmetic."""
    v = (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])
    return (v > 0) - (v < 0)


def _segments_cross(p1, p2, q1, q2) -> bool:
    """True iff the open segments p1p2 and q1q2 properly cross."""
    d1 = _orientation(p1, p2, q1)
    d2 = _orientation(p1, p2, q2)
    d3 = _orientation(q1, q2, p1)
    d4 = _orientation(q1, q2, p2)
    return d1 != d2 and d3 != d4 and 0 not in (d1, d2, d3, d4)


_GEOMETRIC_TABLE = {
    (2, 1): ConfigKind.TACO,
    (2, 0): ConfigKind.MARIPOSA,
    (1, 0): ConfigKind.BAT,
    (1, 2): ConfigKind.NESTED,
    (1, 3): ConfigKind.CROSSING,
    (0, 0): ConfigKind.EARS,
    (0, 4): ConfigKind.SWORDS,
    (0, 6): ConfigKind.DAVID,
}


def classify_geometric(arena: ConvexArena, t1: Triangle, t2: Triangle) -> ConfigKind:
    """Independent oracle: classify by drawing the arena and counting crossings.

    Vertex k is embedded at the integer point (k, -k^2), which walks a
    strictly convex curve clockwise; any strictly convex clockwise placement
    induces the same cyclic order, hence the same crossing pattern, so the
    predicates stay exact without irrational coordinates.  Convex position
    makes vertex-in-triangle containment impossible, so the class is a
    function of (shared-vertex count, proper crossing count) alone.
    """
    arena.check_triangle(t1)
    arena.check_triangle(t2)
    if t1 == t2:
        raise ValueError(f"cannot classify identical triangles {tuple(t1)}")
    point = {k: (k, -k * k) for k in set(t1) | set(t2)}
    shared = len(set(t1) & set(t2))
    edges1 = [(t1[i], t1[j]) for i, j in ((0, 1), (1, 2), (0, 2))]
    edges2 = [(t2[i], t2[j]) for i, j in ((0, 1), (1, 2), (0, 2))]
    crossings = 0
    for e1 in edges1:
        for e2 in edges2:
            if set(e1) & set(e2):
                continue
            if _segments_cross(point[e1[0]], point[e1[1]], point[e2[0]], point[e2[1]]):
                crossings += 1
    try:
        return _GEOMETRIC_TABLE[(shared, crossings)]
    except KeyError:  # pragma: no cover - would indicate a broken predicate
        raise AssertionError(
            f"unclassifiable pair {tuple(t1)} vs {tuple(t2)}: "
            f"shared={shared} crossings={crossings}"
        ) from None


@dataclass
class FamilyVerdict:
    """Outcome of checking a triangle family against a forbidden set."""

    ok: bool
    violations: list[tuple[Triangle, Triangle, ConfigKind]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify_family(
    arena: ConvexArena, x: ForbiddenSet, family: Iterable[Triangle]
) -> FamilyVerdict:
    """Check that no pair in the family forms a configuration in x.

    Returns a verdict listing every offending pair with its class.
    Duplicate triangles in the family are an error.
    """
    tris = [t if isinstance(t, Triangle) else Triangle.of(*t) for t in family]
    seen = set()
    for t in tris:
        arena.check_triangle(t)
        if t in seen:
            raise ValueError(f"duplicate triangle in family: {tuple(t)}")
        seen.add(t)
    violations = []
    for t1, t2 in combinations(tris, 2):
        kind = classify_pair(arena, t1, t2)
        if kind in x:
            violations.append((t1, t2, kind))
    return FamilyVerdict(ok=not violations, violations=violations)


def rotate_triangle(t: Triangle, m: int, shift: int) -> Triangle:
    return Triangle.of(*(((v + shift) % m) for v in t))


def reflect_triangle(t: Triangle, m: int) -> Triangle:
    return Triangle.of(*(((m - 1 - v) % m) for v in t))
