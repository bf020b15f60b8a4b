"""Sequential kernels compiled with numba.

All arrays are int64 and vertex/arc ids are 0-based. Trees are passed as
``up[v] = (parent, parent arc)`` rows. ``levels`` arguments exist only for
signature parity with the numpy backend.
"""

import numpy as np
from llvmlite import ir
from numba import njit, types
from numba.core import cgutils
from numba.extending import intrinsic

# Two-pass grouping splits vertex ids into this many buckets so each
# bucket's slice of the output stays cache resident. Below the threshold
# the single-pass scatter is faster (measured crossover near 3e5 vertices).
_BUCKETS = 256
_BUCKETED_FROM = 1 << 18

# How many queue/order positions ahead to prefetch vertex data.
AHEAD = 16


@intrinsic
def prefetch(typingctx, arr, idx):
    """Hint the CPU to pull element ``idx`` of ``arr`` (flat, C order) into cache."""
    sig = types.void(arr, idx)

    def codegen(context, builder, signature, args):
        ary = context.make_array(signature.args[0])(context, builder, args[0])
        ptr = builder.gep(ary.data, [args[1]])
        i8p = ir.IntType(8).as_pointer()
        i32 = ir.IntType(32)
        fnty = ir.FunctionType(ir.VoidType(), [i8p, i32, i32, i32])
        fn = cgutils.get_or_insert_function(builder.module, fnty, "llvm.prefetch.p0i8")
        # read access, high temporal locality, data cache
        builder.call(fn, [builder.bitcast(ptr, i8p), ir.Constant(i32, 0), ir.Constant(i32, 3), ir.Constant(i32, 1)])
        return context.get_dummy_value()

    return sig, codegen


def adjacency(n, key, far):
    """Arcs grouped by ``key`` as CSR rows of ``(far endpoint, arc id)``.

    Stable: within a row arc ids ascend. Large graphs are scattered in two
    passes (coarse bucket, then exact row) to keep writes cache-local.
    Buffers come from numpy so big ones get transparent huge pages.
    """
    m = key.size
    indptr = np.zeros(n + 1, np.int64)
    adj = np.empty((m, 2), np.int64)
    if n < _BUCKETED_FROM:
        _scatter_direct(key, far, indptr, adj)
    else:
        _scatter_bucketed(key, far, indptr, adj, np.empty((m, 3), np.int64))
    return indptr, adj


@njit(cache=True)
def _row_starts(key, indptr):
    m = key.size
    n = indptr.size - 1
    for a in range(m):
        if a + AHEAD < m:
            prefetch(indptr, key[a + AHEAD] + 1)
        indptr[key[a] + 1] += 1
    for i in range(n):
        indptr[i + 1] += indptr[i]


@njit(cache=True)
def _scatter_direct(key, far, indptr, adj):
    _row_starts(key, indptr)
    pos = indptr[:-1].copy()
    m = key.size
    for a in range(m):
        if a + AHEAD < m:
            prefetch(pos, key[a + AHEAD])
        k = key[a]
        p = pos[k]
        adj[p, 0] = far[a]
        adj[p, 1] = a
        pos[k] = p + 1


@njit(cache=True)
def _scatter_bucketed(key, far, indptr, adj, tmp):
    _row_starts(key, indptr)
    n = indptr.size - 1
    m = key.size
    shift = 0
    while ((n - 1) >> shift) >= _BUCKETS:
        shift += 1
    nb = ((n - 1) >> shift) + 1
    bpos = np.empty(nb, np.int64)
    for b in range(nb):
        bpos[b] = indptr[b << shift]
    for a in range(m):
        k = key[a]
        j = bpos[k >> shift]
        tmp[j, 0] = k
        tmp[j, 1] = far[a]
        tmp[j, 2] = a
        bpos[k >> shift] = j + 1
    pos = indptr[:-1].copy()
    for j in range(m):
        k = tmp[j, 0]
        p = pos[k]
        adj[p, 0] = tmp[j, 1]
        adj[p, 1] = tmp[j, 2]
        pos[k] = p + 1


@njit(cache=True)
def bfs(n, indptr, adj, root):
    """Breadth-first search over CSR rows.

    Returns ``(up, found, level_sizes)``: ``up[v] = (parent, arc)`` or
    ``(-1, -1)``, vertices in discovery order, and the size of each level.
    """
    up = np.full((n, 2), -1, np.int64)
    seen = np.zeros(n, np.uint8)
    queue = np.empty(n, np.int64)
    sizes = np.empty(n, np.int64)
    queue[0] = root
    seen[root] = 1
    sizes[0] = 1
    levels = 1
    level_end = 1
    head = 0
    tail = 1
    while head < tail:
        if head == level_end:
            sizes[levels] = tail - level_end
            levels += 1
            level_end = tail
        if head + 2 * AHEAD < tail:
            prefetch(indptr, queue[head + 2 * AHEAD])
        if head + AHEAD < tail:
            prefetch(adj, 2 * indptr[queue[head + AHEAD]])
        u = queue[head]
        head += 1
        for i in range(indptr[u], indptr[u + 1]):
            v = adj[i, 0]
            if seen[v] == 0:
                seen[v] = 1
                prefetch(up, 2 * v)
                up[v, 0] = u
                up[v, 1] = adj[i, 1]
                queue[tail] = v
                tail += 1
    return up, queue[:tail].copy(), sizes[:levels].copy()


@njit(cache=True)
def subtree_sums(order, levels, up, values):
    acc = values.copy()
    for i in range(order.size):
        if i + AHEAD < order.size:
            w = order[i + AHEAD]
            prefetch(up, 2 * w)
            prefetch(acc, w)
        v = order[i]
        acc[up[v, 0]] += acc[v]
    return acc


@njit(cache=True)
def push_up(order, levels, up, s, room, flow):
    for i in range(order.size):
        if i + AHEAD < order.size:
            w = order[i + AHEAD]
            prefetch(up, 2 * w)
            prefetch(s, w)
            prefetch(room, w)
        v = order[i]
        x = min(s[v], room[v])
        if x > 0:
            flow[up[v, 1]] += x
            s[up[v, 0]] += x
            s[v] -= x


@njit(cache=True)
def pull_down(order, levels, up, d, flow):
    for i in range(order.size):
        if i + AHEAD < order.size:
            u = order[i + AHEAD]
            prefetch(up, 2 * u)
            prefetch(d, u)
        w = order[i]
        dw = d[w]
        if dw < 0:
            return w
        flow[up[w, 1]] += dw
        d[up[w, 0]] += dw
    return -1
