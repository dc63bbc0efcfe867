# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twin of ``_mis_py.search``.

Same algorithm, same branching order, same node counts; bitsets are
uint64 word arrays instead of Python ints.  The test suite asserts that
this module and the pure engine agree on optima and node counts.
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

ctypedef unsigned long long u64


cdef struct Ctx:
    u64 *comp
    u64 *pbuf
    u64 *mbuf
    u64 *qbuf
    int *order_buf
    int *color_buf
    int *R
    int *best
    int n
    int W
    int r_len
    int best_size
    long long nodes
    long long budget
    bint aborted


cdef inline bint _empty(u64 *s, int W) nogil:
    cdef int i
    for i in range(W):
        if s[i]:
            return False
    return True


cdef void _expand(Ctx *ctx, int depth) nogil:
    cdef int W = ctx.W
    cdef u64 *P = ctx.pbuf + depth * W
    cdef u64 *m = ctx.mbuf
    cdef u64 *q = ctx.qbuf
    cdef u64 *child = ctx.pbuf + (depth + 1) * W
    cdef u64 *comp_v
    cdef int *order = ctx.order_buf + depth * ctx.n
    cdef int *colors = ctx.color_buf + depth * ctx.n
    cdef int i, w, v, color, k, idx

    ctx.nodes += 1
    if ctx.nodes > ctx.budget:
        ctx.aborted = True
        return
    if _empty(P, W):
        if ctx.r_len > ctx.best_size:
            ctx.best_size = ctx.r_len
            for i in range(ctx.r_len):
                ctx.best[i] = ctx.R[i]
        return

    # greedy sequential colouring, lowest vertex index first
    memcpy(m, P, W * sizeof(u64))
    k = 0
    color = 0
    while not _empty(m, W):
        color += 1
        memcpy(q, m, W * sizeof(u64))
        while True:
            v = -1
            for w in range(W):
                if q[w]:
                    v = w * 64 + __builtin_ctzll(q[w])
                    break
            if v < 0:
                break
            order[k] = v
            colors[k] = color
            k += 1
            m[v >> 6] &= ~((<u64>1) << (v & 63))
            q[v >> 6] &= ~((<u64>1) << (v & 63))
            comp_v = ctx.comp + v * W
            for w in range(W):
                q[w] &= ~comp_v[w]

    for idx in range(k - 1, -1, -1):
        if ctx.aborted:
            return
        if ctx.r_len + colors[idx] <= ctx.best_size:
            return
        v = order[idx]
        comp_v = ctx.comp + v * W
        for w in range(W):
            child[w] = P[w] & comp_v[w]
        ctx.R[ctx.r_len] = v
        ctx.r_len += 1
        _expand(ctx, depth + 1)
        ctx.r_len -= 1
        P[v >> 6] &= ~((<u64>1) << (v & 63))


def search(comp, int n, best_init, long long budget):
    """Maximum clique on bitset adjacency; returns (best, nodes, aborted)."""
    if n == 0:
        return list(best_init), 0, False
    cdef int W = (n + 63) >> 6
    cdef Ctx ctx
    cdef int i, w
    cdef object mask64 = (1 << 64) - 1
    cdef object x

    ctx.n = n
    ctx.W = W
    ctx.budget = budget
    ctx.nodes = 0
    ctx.aborted = False
    ctx.r_len = 0
    ctx.best_size = len(best_init)

    ctx.comp = <u64 *> calloc(n * W, sizeof(u64))
    ctx.pbuf = <u64 *> calloc((n + 2) * W, sizeof(u64))
    ctx.mbuf = <u64 *> calloc(W, sizeof(u64))
    ctx.qbuf = <u64 *> calloc(W, sizeof(u64))
    ctx.order_buf = <int *> calloc((n + 2) * n, sizeof(int))
    ctx.color_buf = <int *> calloc((n + 2) * n, sizeof(int))
    ctx.R = <int *> calloc(n, sizeof(int))
    ctx.best = <int *> calloc(n, sizeof(int))
    if (ctx.comp == NULL or ctx.pbuf == NULL or ctx.mbuf == NULL
            or ctx.qbuf == NULL or ctx.order_buf == NULL
            or ctx.color_buf == NULL or ctx.R == NULL or ctx.best == NULL):
        raise MemoryError

    try:
        for i in range(n):
            x = comp[i]
            for w in range(W):
                ctx.comp[i * W + w] = <u64> ((x >> (64 * w)) & mask64)
        for i, v in enumerate(best_init):
            ctx.best[i] = v
        for i in range(n):
            ctx.pbuf[i >> 6] |= (<u64>1) << (i & 63)
        with nogil:
            _expand(&ctx, 0)
        best = [ctx.best[i] for i in range(ctx.best_size)]
        return best, ctx.nodes, ctx.aborted
    finally:
        free(ctx.comp)
        free(ctx.pbuf)
        free(ctx.mbuf)
        free(ctx.qbuf)
        free(ctx.order_buf)
        free(ctx.color_buf)
        free(ctx.R)
        free(ctx.best)
