"""Engine-level checks: correctness vs brute force, backend parity, budgets."""

import random
from itertools import combinations

import pytest

from triconfig import _mis_py
from triconfig.misolver import BACKEND, solve_mis

try:
    from triconfig import _mis_core
except ImportError:
    _mis_core = None


def random_adjacency(n, p, seed):
    rng = random.Random(seed)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def brute_force_mis(adj):
    n = len(adj)
    best = 0
    for size in range(n, -1, -1):
        for combo in combinations(range(n), size):
            if all(not adj[i] >> j & 1 for i, j in combinations(combo, 2)):
                return size
    return best


@pytest.mark.parametrize("seed", range(12))
def test_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 13)
    p = rng.choice([0.15, 0.4, 0.7])
    adj = random_adjacency(n, p, seed * 101)
    res = solve_mis(adj)
    assert res.exact
    assert res.size == brute_force_mis(adj)
    # witness really is independent
    for i, j in combinations(res.vertices, 2):
        assert not adj[i] >> j & 1


def test_restrict_equals_induced_subgraph():
    adj = random_adjacency(14, 0.4, 9)
    keep = [0, 2, 3, 5, 8, 9, 11, 13]
    mask = sum(1 << v for v in keep)
    restricted = solve_mis(adj, restrict=mask)
    remap = {v: i for i, v in enumerate(keep)}
    induced = [0] * len(keep)
    for a, b in combinations(keep, 2):
        if adj[a] >> b & 1:
            induced[remap[a]] |= 1 << remap[b]
            induced[remap[b]] |= 1 << remap[a]
    assert restricted.size == solve_mis(induced).size
    assert all(v in keep for v in restricted.vertices)


def test_budget_abort_is_flagged_and_bounded():
    adj = random_adjacency(40, 0.2, 3)
    res = solve_mis(adj, budget=10)
    assert not res.exact
    assert res.nodes == 11  # stops right after crossing the budget
    exact = solve_mis(adj)
    assert exact.exact and res.size <= exact.size


def test_empty_and_singleton():
    assert solve_mis([]).size == 0
    assert solve_mis([0]).size == 1


@pytest.mark.skipif(_mis_core is None, reason="compiled extension not built")
def test_backends_agree_including_node_counts():
    for seed in range(10):
        rng = random.Random(seed)
        n = rng.randint(2, 50)
        adj = random_adjacency(n, rng.choice([0.2, 0.5, 0.8]), seed)
        full = (1 << n) - 1
        comp = [(~adj[v] & full) & ~(1 << v) for v in range(n)]
        seed_clique = []
        cand = full
        for i in range(n):
            if cand >> i & 1:
                seed_clique.append(i)
                cand &= comp[i]
        for budget in (10**9, 37):
            b1, n1, a1 = _mis_py.search(list(comp), n, list(seed_clique), budget)
            b2, n2, a2 = _mis_core.search(list(comp), n, list(seed_clique), budget)
            assert (len(b1), n1, a1) == (len(b2), n2, a2)
            assert sorted(b1) == sorted(b2)


def test_backend_reported():
    assert BACKEND in ("compiled", "pure-python")
