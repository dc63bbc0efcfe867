"""Pure-Python branch-and-bound core (clique search on bitset graphs).

This is the fallback engine behind :mod:`triconfig.misolver`; the compiled
extension ``triconfig._mis_core`` implements the identical algorithm, so
节点 counts and returned optima match between the two (the test suite
asserts this).  Bitsets are plain Python ints.
"""

from __future__ import annotations

import sys


def search(
    comp: list[int], n: int, best_init: list[int], budget: int
) -> tuple[list[int], int, bool]:
    """Maximum clique on the graph given by bitset adjacency ``comp``.

    Tomita-style branch and bound: at each node the candidate set is
    greedily coloured (sequential, lowest vertex index first) and vertices
    are branched in reverse colour order, pruning when the colour bound
    cannot beat the incumbent.  Returns (best clique, nodes, aborted);
    ``aborted`` means the node budget ran out and the result is only a
    lower bound.
    """
    sys.setrecursionlimit(max(10000, 4 * n + 100))
    best = list(best_init)
    state = {"best_size": len(best_init), "nodes": 0, "aborted": False}
    R: list[int] = []

    def expand(P: int) -> None:
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["aborted"] = True
            return
        if P == 0:
            if len(R) > state["best_size"]:
                state["best_size"] = len(R)
                best[:] = R
            return
        order: list[int] = []
        colors: list[int] = []
        m = P
        color = 0
        while m:
            color += 1
            q = m
            while q:
                lsb = q & -q
                v = lsb.bit_length() - 1
                order.append(v)
                colors.append(color)
                m ^= lsb
                q &= ~(comp[v] | lsb)
        for idx in range(len(order) - 1, -1, -1):
            if state["aborted"]:
                return
            if len(R) + colors[idx] <= state["best_size"]:
                return
            v = order[idx]
            R.append(v)
            expand(P & comp[v])
            R.pop()
            P &= ~(1 << v)

    expand((1 << n) - 1 if n else 0)
    return best, state["nodes"], state["aborted"]
