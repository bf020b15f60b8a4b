"""Hypothesis strategies and small helpers shared across the test modules."""

import numpy as np
from hypothesis import strategies as st

from feasflow import Network


@st.composite
def imports_summing_to_zero(draw, n, max_abs=5):
    b = draw(st.lists(st.integers(-max_abs, max_abs), min_size=n, max_size=n))
    b[-1] -= sum(b)
    return b


@st.composite
def networks(draw, max_n=7, max_m=14, max_cap=4, balanced=True):
    """Arbitrary small multigraphs (not necessarily strongly connected)."""
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    tail = draw(st.lists(st.integers(0, n - 1), min_size=m, max_size=m))
    head = draw(st.lists(st.integers(0, n - 1), min_size=m, max_size=m))
    cap = draw(st.lists(st.integers(0, max_cap), min_size=m, max_size=m))
    if balanced:
        b = draw(imports_summing_to_zero(n))
    else:
        b = draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))
    return Network(n, tail, head, cap, b)


@st.composite
def strongly_connected(draw, max_n=12, max_extra=20, capacity="exact", max_supply=20):
    """Hamiltonian cycle in a random vertex order plus random extra arcs,
    all shuffled into a random arc order. ``capacity`` is exact (= B),
    atleast (>= B) or double (>= 2B)."""
    n = draw(st.integers(1, max_n))
    perm = draw(st.permutations(range(n)))
    arcs = [(perm[i], perm[(i + 1) % n]) for i in range(n)] if n > 1 else []
    extra = draw(st.integers(0, max_extra))
    for _ in range(extra):
        arcs.append((draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))))
    order = draw(st.permutations(range(len(arcs))))
    arcs = [arcs[i] for i in order]

    supply = draw(st.integers(0, max_supply))
    b = [0] * n
    if supply and n > 1:
        k = draw(st.integers(1, n - 1))
        sources, sinks = perm[:k], perm[k:]
        for _ in range(supply):
            b[draw(st.sampled_from(sources))] += 1
            b[draw(st.sampled_from(sinks))] -= 1
    B = sum(x for x in b if x > 0)
    base = {"exact": B, "atleast": B, "double": 2 * B}[capacity]
    if capacity == "exact":
        cap = [base] * len(arcs)
    else:
        cap = [base + draw(st.integers(0, 3)) for _ in arcs]
    return Network(n, [a[0] for a in arcs], [a[1] for a in arcs], cap, b)


def three_cycle(cap=1):
    return Network.from_arcs(3, [(1, 2, cap), (2, 3, cap), (3, 1, cap)], {2: 1, 3: -1})


def two_cycle(cap=1):
    return Network.from_arcs(2, [(1, 2, cap), (2, 1, cap)], {1: 1, 2: -1})


def five_vertex_cancel():
    """Supply at U-leaf 3, demand at 5 in its sibling subtree; root arcs stay idle."""
    arcs = [(1, 2), (2, 3), (2, 4), (4, 5), (3, 2), (5, 4), (4, 2), (2, 1)]
    return Network.from_arcs(5, [(t, h, 1) for t, h in arcs], {3: 1, 5: -1})


def reference_bfs(net, root, backward=False):
    """Queue BFS in plain Python, neighbors by ascending arc index.

    Returns ``(parent, parent_arc, discovery_order)`` as lists.
    """
    n = net.n
    src, dst = (net.head, net.tail) if backward else (net.tail, net.head)
    out = [[] for _ in range(n)]
    for a in range(net.m):
        out[int(src[a])].append((a, int(dst[a])))
    parent, parent_arc = [-1] * n, [-1] * n
    seen = [False] * n
    seen[root] = True
    queue = [root]
    i = 0
    while i < len(queue):
        u = queue[i]
        i += 1
        for a, v in out[u]:
            if not seen[v]:
                seen[v] = True
                parent[v], parent_arc[v] = u, a
                queue.append(v)
    return parent, parent_arc, queue


def descendants(parent, v):
    """All vertices whose parent chain passes through ``v`` (``v`` included)."""
    out = []
    for w in range(len(parent)):
        x = w
        while x != -1 and x != v:
            x = parent[x]
        if x == v:
            out.append(w)
    return out


def as_list(a):
    return np.asarray(a).tolist()
