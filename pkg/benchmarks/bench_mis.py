"""Benchmark: compiled extension vs pure-Python search engine.

Runs the same branch-and-bound on identical graphs through both backends
and reports wall time, node counts (which must agree) and speedup.

    python benchmarks/bench_mis.py [--quick]
"""

from __future__ import annotations

import argparse
import random
import time

from triconfig import _mis_py
from triconfig.core import ForbiddenSet
from triconfig.extremal import build_conflict_graph
from triconfig.misolver import _degeneracy_order

try:
    from triconfig import _mis_core
except ImportError:
    _mis_core = None


def _prepare(adjacency: list[int]):
    """Same preprocessing as misolver.solve_mis: degeneracy order + greedy seed."""
    n = len(adjacency)
    full = (1 << n) - 1
    comp_orig = [(~adjacency[v] & full) & ~(1 << v) for v in range(n)]
    order = list(reversed(_degeneracy_order(comp_orig, list(range(n)))))
    pos = {v: i for i, v in enumerate(order)}
    comp = [0] * n
    for v in range(n):
        bits = 0
        m = comp_orig[v]
        while m:
            lsb = m & -m
            bits |= 1 << pos[lsb.bit_length() - 1]
            m ^= lsb
        comp[pos[v]] = bits
    seed = []
    cand = full
    for i in range(n):
        if cand >> i & 1:
            seed.append(i)
            cand &= comp[i]
    return comp, n, seed


def random_graph(n: int, p: float, seed: int) -> list[int]:
    rng = random.Random(seed)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def bench_one(name: str, adjacency: list[int]) -> None:
    comp, n, seed = _prepare(adjacency)
    t0 = time.perf_counter()
    best_p, nodes_p, _ = _mis_py.search(list(comp), n, list(seed), 10**9)
    t_py = time.perf_counter() - t0
    if _mis_core is None:
        print(f"{name:<42} pure {t_py:8.3f}s  opt={len(best_p)} nodes={nodes_p} (no extension)")
        return
    t0 = time.perf_counter()
    best_c, nodes_c, _ = _mis_core.search(list(comp), n, list(seed), 10**9)
    t_c = time.perf_counter() - t0
    agree = len(best_p) == len(best_c) and nodes_p == nodes_c
    print(
        f"{name:<42} pure {t_py:8.3f}s  compiled {t_c:8.3f}s  "
        f"speedup {t_py / max(t_c, 1e-9):6.1f}x  opt={len(best_p)} "
        f"nodes={nodes_p}{'' if agree else '  *** MISMATCH ***'}"
    )


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="skip the slow cases")
    args = parser.parse_args()

    cases = [
        ("top-bottom m=14 X=nested,ears,david", 14, "nested,ears,david"),
        ("top-bottom m=16 X=crossing,swords", 16, "crossing,swords"),
        ("top-bottom m=16 X=taco,swords", 16, "taco,swords"),
    ]
    if not args.quick:
        cases.append(("top-bottom m=16 X=nested,ears,david", 16, "nested,ears,david"))
    for name, m, x in cases:
        g = build_conflict_graph(m, ForbiddenSet.parse(x), "top-bottom")
        bench_one(name, g.adjacency)

    for n, p in ((50, 0.3), (70, 0.5), (90, 0.7)):
        bench_one(f"random G({n}, {p})", random_graph(n, p, seed=7))


if __name__ == "__main__":
    main()
