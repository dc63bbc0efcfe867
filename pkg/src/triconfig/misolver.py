"""Exact maximum-independent-set engine with a compiled/pure backend switch.

The MIS of the conflict graph is found as a maximum clique of the
complement.  Preprocessing (degeneracy ordering, greedy seed) lives here;
the hot branch-and-bound loop lives in ``_mis_core`` (Cython) when that
extension built, else in ``_mis_py``.  Set ``TRICONFIG_PURE=1`` to force
the pure-Python engine.  Both engines follow the same branching order, so
results and node counts are identical.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import _mis_py

if os.environ.get("TRICONFIG_PURE") == "1":
    _core = None
else:
    try:
        from . import _mis_core as _core  # type: ignore[attr-defined]
    except ImportError:
        _core = None

BACKEND = "compiled" if _core is not None else "pure-python"
DEFAULT_NODE_BUDGET = 100_000_000


@dataclass
class MISResult:
    size: int
    vertices: list[int]
    nodes: int
    exact: bool
    backend: str


def _degeneracy_order(adj: list[int], members: list[int]) -> list[int]:
    """Peel minimum-degree vertices (ties: lowest index); returns peel order."""
    alive = 0
    for v in members:
        alive |= 1 << v
    order = []
    for _ in members:
        best_v, best_d = -1, len(adj) + 1
        m = alive
        while m:
            lsb = m & -m
            v = lsb.bit_length() - 1
            d = (adj[v] & alive).bit_count()
            if d < best_d:
                best_d, best_v = d, v
            m ^= lsb
        order.append(best_v)
        alive &= ~(1 << best_v)
    return order


def solve_mis(
    adjacency: list[int],
    budget: int | None = None,
    restrict: int | None = None,
) -> MISResult:
    """Maximum independent set of the graph given as per-vertex bitsets.

    ``restrict`` narrows the search to an induced subgraph (bitmask of
    allowed vertices).  Deterministic: byte-identical inputs give identical
    optima, witnesses and node counts regardless of backend.
    """
    if budget is None:
        budget = DEFAULT_NODE_BUDGET
    n = len(adjacency)
    full = (1 << n) - 1
    allowed = full if restrict is None else (restrict & full)
    members = [v for v in range(n) if allowed >> v & 1]
    k = len(members)
    if k == 0:
        return MISResult(0, [], 0, True, BACKEND)

    comp_orig = [(~adjacency[v] & allowed) & ~(1 << v) for v in range(n)]
    peel = _degeneracy_order(comp_orig, members)
    order = list(reversed(peel))  # densest core first
    pos = {v: i for i, v in enumerate(order)}

    comp = [0] * k
    for v in members:
        bits = 0
        m = comp_orig[v]
        while m:
            lsb = m & -m
            bits |= 1 << pos[lsb.bit_length() - 1]
            m ^= lsb
        comp[pos[v]] = bits

    # greedy clique in relabeled complement seeds the incumbent
    seed = []
    cand = (1 << k) - 1
    for i in range(k):
        if cand >> i & 1:
            seed.append(i)
            cand &= comp[i]

    engine = _core if _core is not None else _mis_py
    best, nodes, aborted = engine.search(comp, k, seed, budget)
    vertices = sorted(order[i] for i in best)
    return MISResult(len(best), vertices, nodes, not aborted, BACKEND)
