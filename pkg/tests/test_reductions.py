"""Mariposa stripping, the half-split recurrence, and the 256-cell table."""

import math
from itertools import combinations

import pytest

from triconfig.core import ConfigKind, ConvexArena, ForbiddenSet, Triangle, classify_pair
from triconfig.reductions import (
    build_table,
    claimed_class,
    mariposa_strip,
    top_bottom_solve,
)


def _has_mariposa_pair(m, family):
    arena = ConvexArena(m)
    return any(
        classify_pair(arena, t1, t2) is ConfigKind.MARIPOSA
        for t1, t2 in combinations(family, 2)
    )


def test_strip_output_is_mariposa_free():
    m = 8
    arena = ConvexArena(m)
    family = list(arena.triangles())
    assert _has_mariposa_pair(m, family)
    for seed in range(25):
        kept = mariposa_strip(arena, family, seed)
        assert set(kept) <= set(family)
        assert not _has_mariposa_pair(m, kept)


def test_strip_deterministic_and_handles_edge_cases():
    arena = ConvexArena(9)
    family = [Triangle.of(0, 1, 2), Triangle.of(3, 4, 5), Triangle.of(6, 7, 8)]
    assert mariposa_strip(arena, family, 7) == mariposa_strip(arena, family, 7)
    assert mariposa_strip(arena, [], 7) == []
    # mariposa-free family: output still a subset and still mariposa-free
    kept = mariposa_strip(arena, family, 1)
    assert set(kept) <= set(family)


def test_strip_retention_rate_quick():
    # edge-disjoint triangles -> independent 1/8 coin flips per triangle
    arena = ConvexArena(18)
    family = [Triangle.of(3 * i, 3 * i + 1, 3 * i + 2) for i in range(6)]
    seeds = 1500
    total = sum(len(mariposa_strip(arena, family, s)) for s in range(seeds))
    mean = total / seeds
    sigma = math.sqrt(6 * (1 / 8) * (7 / 8) / seeds)
    assert abs(mean - 6 / 8) <= 5 * sigma


def test_recurrence_shapes():
    linear = top_bottom_solve(1, base_value=0.0, base_n=2)
    assert linear.bounded
    assert max(linear.ratios.values()) <= 1.0 + 1e-9  # coeff 1, zero base

    quad = top_bottom_solve(2)
    assert quad.bounded
    assert max(quad.ratios.values()) <= 2.0 + 1e-9

    zero = top_bottom_solve(2, coeff=0.0)
    assert all(v == 0 for v in zero.values.values())

    with pytest.raises(ValueError):
        top_bottom_solve(0.9)


def test_recurrence_flags_wrong_exponent():
    # n log n growth measured against n must not look bounded
    data = top_bottom_solve(1)
    seq = [data.values[n] / n for n in sorted(data.values)]
    deltas = [abs(b - a) for a, b in zip(seq, seq[1:])][-6:]
    assert not all(
        later <= max(0.99 * earlier, 1e-12)
        for earlier, later in zip(deltas, deltas[1:])
    )


def test_claimed_classes():
    assert claimed_class(ForbiddenSet.parse("taco,nested")) == "tripods"
    assert claimed_class(ForbiddenSet.parse("taco,nested,mariposa")) == "tripods"
    assert claimed_class(ForbiddenSet.parse("none")) == "n^3"
    assert claimed_class(ForbiddenSet.parse("all")) == "1"
    assert claimed_class(ForbiddenSet.parse("taco,nested,crossing,swords,david")) == "n*"
    assert claimed_class(ForbiddenSet.parse("nested")) == "n^2"  # quadratic warm-up
    assert claimed_class(ForbiddenSet.parse("nested,swords")) == "n*"
    assert claimed_class(ForbiddenSet.parse("bat")) == "n^3"  # crossing family dodges it
    assert claimed_class(ForbiddenSet.parse("bat,swords")) == "n^2"


def test_table_small():
    lattice = build_table(n_max=4)
    assert lattice.consistency_violations() == []
    assert lattice.flags == []
    eq1 = ForbiddenSet.parse("taco,nested,crossing,swords,david").mask
    assert lattice.ex_values[eq1] == {3: 1, 4: 2}
    assert lattice.ex_values[0xFF] == {3: 1, 4: 1}
    assert lattice.ex_values[0] == {3: 1, 4: 4}
    assert lattice.upper_tags[0xFF] == "single-triangle"
    assert lattice.upper_tags[eq1] == "triangulation"

    # certified construction bounds never beat the exact optimum, and the
    # fan pins the triangulation cells exactly
    for mask in range(256):
        for n in lattice.sizes():
            assert lattice.construction_lb[mask][n] <= lattice.ex_values[mask][n]
    assert lattice.construction_lb[eq1] == lattice.ex_values[eq1]

    csv_text = lattice.to_csv()
    assert len(csv_text.strip().splitlines()) == 257
    md = lattice.to_markdown()
    assert md.count("\n") == 18  # header + separator + 16 rows
    payload = lattice.to_json()
    assert len(payload["cells"]) == 256
