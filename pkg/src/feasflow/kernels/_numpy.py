"""Pure-numpy versions of the kernels in ``_jit``.

Breadth-first search runs one frontier at a time, and every leaf-to-root
pass runs one depth level at a time: vertices on the same level never
feed each other, so a level can be applied as a single vectorized update.
Results are identical to the sequential kernels, including tie-breaking.
"""

import numpy as np


def adjacency(n, key, far):
    arcs = np.argsort(key, kind="stable").astype(np.int64)
    indptr = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(key, minlength=n), out=indptr[1:])
    return indptr, np.column_stack((far[arcs], arcs))


def bfs(n, indptr, adj, root):
    up = np.full((n, 2), -1, np.int64)
    seen = np.zeros(n, bool)
    seen[root] = True
    frontier = np.array([root], np.int64)
    found = [frontier]
    while True:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        # Flatten the frontier's rows, keeping queue order then arc order.
        shift = np.repeat(starts - (np.cumsum(counts) - counts), counts)
        rows = shift + np.arange(total)
        cand = adj[rows, 0]
        fresh = ~seen[cand]
        if not fresh.any():
            break
        rows, cand = rows[fresh], cand[fresh]
        _, first = np.unique(cand, return_index=True)
        first.sort()
        nxt = cand[first]
        seen[nxt] = True
        up[nxt, 0] = np.repeat(frontier, counts)[fresh][first]
        up[nxt, 1] = adj[rows[first], 1]
        found.append(nxt)
        frontier = nxt
    sizes = np.array([f.size for f in found], np.int64)
    return up, np.concatenate(found), sizes


def _blocks(order, levels):
    """Split a leaf-to-root order into its depth levels, deepest first."""
    sizes = levels[:0:-1]
    return np.split(order, np.cumsum(sizes)[:-1]) if order.size else []


def subtree_sums(order, levels, up, values):
    acc = values.copy()
    for vs in _blocks(order, levels):
        np.add.at(acc, up[vs, 0], acc[vs])
    return acc


def push_up(order, levels, up, s, room, flow):
    for vs in _blocks(order, levels):
        x = np.minimum(s[vs], room[vs])
        np.maximum(x, 0, out=x)
        flow[up[vs, 1]] += x
        s[vs] -= x
        np.add.at(s, up[vs, 0], x)


def pull_down(order, levels, up, d, flow):
    for vs in _blocks(order, levels):
        dw = d[vs]
        bad = np.flatnonzero(dw < 0)
        if bad.size:
            return int(vs[bad[0]])
        flow[up[vs, 1]] += dw
        np.add.at(d, up[vs, 0], dw)
    return -1
