"""Generators validate against their claimed sets and size formulas."""

from itertools import combinations

import pytest

from triconfig.constructions import (
    ConstructionSpec,
    claimed_forbidden,
    construction_ids,
    generate,
    generate_json,
    output_kind,
    size_formula,
)
from triconfig.core import ConfigKind, ConvexArena, ForbiddenSet, classify_pair
from triconfig.puzzle import PuzzleState
from triconfig.tripods import TripleSet

MIN_N = {
    "fan": 3,
    "linear-taco": 3,
    "linear-bat": 4,
    "linear-nested": 4,
    "linear-crossing": 4,
    "linear-ears": 3,
    "linear-swords": 3,
    "linear-david": 3,
    "pairwise-crossing": 3,
    "diag-lines": 2,
    "quadrant": 3,
    "repeated-diagonal": 2,
    "shifted-diagonal": 2,
}


def test_every_construction_generates_and_sizes_match_to_12():
    for cid in construction_ids():
        ns = (1, 4, 9) if cid == "tripod-half" else range(MIN_N[cid], 13)
        for n in ns:
            spec = ConstructionSpec(cid, n)
            out = generate(spec)  # generate() self-verifies claim and size
            if isinstance(out, PuzzleState):
                assert out.score == size_formula(spec)
            elif isinstance(out, TripleSet):
                assert len(out.triples) == size_formula(spec)
            else:
                assert len(out) == size_formula(spec)


def test_refusals():
    with pytest.raises(ValueError):
        generate(ConstructionSpec("fan", 2))
    with pytest.raises(ValueError):
        generate(ConstructionSpec("linear-bat", 3))
    with pytest.raises(ValueError):
        generate(ConstructionSpec("tripod-half", 8))  # not a square
    with pytest.raises(ValueError):
        generate(ConstructionSpec("made-up", 5))


def test_spec_point_values():
    ears9 = generate(ConstructionSpec("linear-ears", 9))
    assert [tuple(t) for t in ears9] == [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    assert len(generate(ConstructionSpec("pairwise-crossing", 6))) == 8
    assert len(generate(ConstructionSpec("fan", 7))) == 5
    assert size_formula(ConstructionSpec("linear-nested", 10)) == 4
    assert size_formula(ConstructionSpec("pairwise-crossing", 9)) == 27
    q = generate(ConstructionSpec("quadrant", 8))
    assert q.score == len({(x, y) for x in range(5, 9) for y in range(1, 4)})


@pytest.mark.parametrize(
    "cid,kind",
    [
        ("linear-taco", ConfigKind.TACO),
        ("linear-bat", ConfigKind.BAT),
        ("linear-nested", ConfigKind.NESTED),
        ("linear-crossing", ConfigKind.CROSSING),
        ("linear-ears", ConfigKind.EARS),
        ("linear-swords", ConfigKind.SWORDS),
        ("linear-david", ConfigKind.DAVID),
    ],
)
def test_linear_families_are_pure(cid, kind):
    for n in (7, 12, 25):
        family = generate(ConstructionSpec(cid, n))
        arena = ConvexArena(n)
        assert len(family) >= 2
        for t1, t2 in combinations(family, 2):
            assert classify_pair(arena, t1, t2) is kind


def test_puzzle_constructions_avoid_their_claims():
    # generate() already replays through the engine; spot-check the claims
    assert claimed_forbidden(ConstructionSpec("quadrant", 8)) == ForbiddenSet.parse(
        "bat,ears,swords,david"
    )
    assert claimed_forbidden(ConstructionSpec("repeated-diagonal", 8)) == (
        ForbiddenSet.parse("nested,crossing,david")
    )
    state = generate(ConstructionSpec("repeated-diagonal", 9))
    assert state.score == 9 * 4
    assert len(state.rounds) == 9


def test_output_kinds_and_json():
    assert output_kind(ConstructionSpec("fan", 5)) == "family"
    assert output_kind(ConstructionSpec("quadrant", 5)) == "puzzle"
    assert output_kind(ConstructionSpec("tripod-half", 4)) == "triples"
    fam = generate_json(ConstructionSpec("fan", 6))
    assert fam["m"] == 6 and len(fam["triangles"]) == 4
    sol = generate_json(ConstructionSpec("diag-lines", 6))
    assert sol["grid"] == {"kind": "triangular", "n": 6}
    assert sol["construction"] == "diag-lines"
