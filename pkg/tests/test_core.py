"""Classifier rules, the geometric oracle, and forbidden-set plumbing."""

from itertools import combinations

import pytest

from triconfig.core import (
    ConfigKind,
    ConvexArena,
    ForbiddenSet,
    Triangle,
    classify_geometric,
    classify_pair,
    reflect_triangle,
    rotate_triangle,
    verify_family,
)

EXAMPLES = [
    (6, (0, 1, 2), (3, 4, 5), ConfigKind.EARS),
    (4, (0, 1, 2), (0, 2, 3), ConfigKind.MARIPOSA),
    (6, (0, 2, 4), (1, 3, 5), ConfigKind.DAVID),
    (5, (0, 1, 3), (0, 2, 4), ConfigKind.CROSSING),
    (6, (0, 1, 3), (2, 4, 5), ConfigKind.SWORDS),
    (4, (0, 1, 2), (0, 1, 3), ConfigKind.TACO),
    (5, (0, 1, 4), (0, 2, 3), ConfigKind.NESTED),
    (5, (0, 1, 2), (0, 3, 4), ConfigKind.BAT),
]


@pytest.mark.parametrize("m,t1,t2,expected", EXAMPLES)
def test_known_pairs(m, t1, t2, expected):
    arena = ConvexArena(m)
    a, b = Triangle.of(*t1), Triangle.of(*t2)
    assert classify_pair(arena, a, b) is expected
    assert classify_geometric(arena, a, b) is expected


def test_classifiers_agree_exhaustively_small():
    for m in range(4, 8):
        arena = ConvexArena(m)
        for t1, t2 in combinations(list(arena.triangles()), 2):
            assert classify_pair(arena, t1, t2) is classify_geometric(arena, t1, t2)


def test_symmetry_swap_rotation_reflection():
    m = 7
    arena = ConvexArena(m)
    tris = list(arena.triangles())
    for t1, t2 in combinations(tris, 2):
        kind = classify_pair(arena, t1, t2)
        assert classify_pair(arena, t2, t1) is kind
        for shift in (1, 3):
            r1 = rotate_triangle(t1, m, shift)
            r2 = rotate_triangle(t2, m, shift)
            assert classify_pair(arena, r1, r2) is kind
        f1 = reflect_triangle(t1, m)
        f2 = reflect_triangle(t2, m)
        assert classify_pair(arena, f1, f2) is kind


def test_disjoint_pairs_have_even_block_count():
    m = 7
    arena = ConvexArena(m)
    disjoint_kinds = {ConfigKind.EARS, ConfigKind.SWORDS, ConfigKind.DAVID}
    for t1, t2 in combinations(list(arena.triangles()), 2):
        if not set(t1) & set(t2):
            assert classify_pair(arena, t1, t2) in disjoint_kinds


def test_all_eight_kinds_realized_on_hexagon():
    arena = ConvexArena(6)
    seen = {
        classify_pair(arena, t1, t2)
        for t1, t2 in combinations(list(arena.triangles()), 2)
    }
    assert seen == set(ConfigKind)


def test_classify_errors():
    arena = ConvexArena(5)
    t = Triangle.of(0, 1, 2)
    with pytest.raises(ValueError):
        classify_pair(arena, t, t)
    with pytest.raises(ValueError):
        classify_pair(arena, t, Triangle.of(0, 1, 5))
    with pytest.raises(ValueError):
        Triangle.of(0, 1, 1)


def test_forbidden_set_parsing():
    x = ForbiddenSet.parse("taco,nested")
    assert ConfigKind.TACO in x and ConfigKind.NESTED in x
    assert ConfigKind.BAT not in x
    assert ForbiddenSet.parse(x.mnemonics()) == x
    assert ForbiddenSet.parse("all") == ForbiddenSet(0xFF)
    assert ForbiddenSet.parse("none") == ForbiddenSet(0)
    assert ForbiddenSet.parse("none").mnemonics() == "none"
    assert len(ForbiddenSet.parse("all")) == 8
    with pytest.raises(ValueError) as err:
        ForbiddenSet.parse("taco,spoon")
    assert "spoon" in str(err.value)


def test_forbidden_set_roundtrip_all_256():
    for mask in range(256):
        x = ForbiddenSet(mask)
        assert ForbiddenSet.parse(x.mnemonics()) == x


def test_verify_family_examples():
    arena = ConvexArena(6)
    assert verify_family(arena, ForbiddenSet.all(), [Triangle.of(0, 1, 2)]).ok

    fan = [Triangle.of(0, i, i + 1) for i in range(1, 5)]
    x = ForbiddenSet.parse("taco,nested,crossing,swords,david")
    assert verify_family(arena, x, fan).ok

    verdict = verify_family(
        arena, ForbiddenSet.parse("taco"), [Triangle.of(0, 1, 2), Triangle.of(0, 1, 3)]
    )
    assert not verdict.ok
    assert verdict.violations[0][2] is ConfigKind.TACO


def test_verify_family_rejects_duplicates():
    arena = ConvexArena(6)
    with pytest.raises(ValueError):
        verify_family(arena, ForbiddenSet.none(), [(0, 1, 2), (0, 1, 2)])
