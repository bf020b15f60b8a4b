"""Feasible flows by routing supplies up an in-tree and demands down an out-tree.

Two solvers share the same tree machinery:

* :func:`feasible_flow` caps each supply transfer at ``B - D(v)``, where
  ``D(v)`` is the total demand below ``v`` in the out-tree, and lets the
  demand pass cancel whatever supply was left behind. It needs every arc
  capacity to be at least the total supply ``B``.
* :func:`feasible_flow_double_cap` routes supplies and demands independently, so
  an arc lying in both trees may carry up to ``2B``.

Both run in O(n + m). Everything is in exact integer units; vertex and arc
ids are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import CapacityTooSmall, LengthMismatch, NegativeDemandAtProcessing, NotStronglyConnected, RangeError
from .network import Flow, Network, total_supply

IN_TREE = "in-tree"
OUT_TREE = "out-tree"


@dataclass(frozen=True, eq=False)
class RootedTree:
    """Spanning tree stored as parent links.

    For an in-tree the arc ``parent_arc[v]`` runs from ``v`` to
    ``parent[v]``; for an out-tree it runs from ``parent[v]`` to ``v``.
    Both live in ``up``, one ``(parent, parent_arc)`` row per vertex and
    ``(-1, -1)`` at the root. ``order`` lists the nonroot vertices so that
    every vertex comes before its parent. ``levels`` holds the breadth-first level sizes, root level
    first; read backwards it partitions ``order`` into depth levels.
    """

    kind: str
    root: int
    up: np.ndarray
    order: np.ndarray
    levels: np.ndarray

    @classmethod
    def from_search(cls, kind: str, root: int, up, discovered, levels) -> RootedTree:
        order = discovered[:0:-1].copy()
        for arr in (up, order, levels):
            arr.flags.writeable = False
        return cls(kind, int(root), up, order, levels)

    @property
    def parent(self) -> np.ndarray:
        return self.up[:, 0]

    @property
    def parent_arc(self) -> np.ndarray:
        return self.up[:, 1]

    def depth(self) -> np.ndarray:
        d = np.empty(self.n, np.int64)
        d[self.order[::-1]] = np.repeat(np.arange(1, self.levels.size), self.levels[1:])
        d[self.root] = 0
        return d

    @property
    def n(self) -> int:
        return int(self.parent.size)

    def tree_arcs(self) -> np.ndarray:
        return np.sort(self.parent_arc[self.parent_arc >= 0])

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent.tolist()):
            if p >= 0:
                kids[p].append(v)
        return kids

    def validate(self, net: Network) -> None:
        """Raise ``ValueError`` if this is not a spanning tree of ``net`` of its kind."""
        n = net.n
        if self.n != n or not 0 <= self.root < n:
            raise ValueError("tree size or root does not match network")
        if self.parent[self.root] != -1 or self.parent_arc[self.root] != -1:
            raise ValueError("root has a parent")
        nonroot = [v for v in range(n) if v != self.root]
        if sorted(self.order.tolist()) != nonroot:
            raise ValueError("order is not a permutation of the nonroot vertices")
        src, dst = (net.tail, net.head) if self.kind == IN_TREE else (net.head, net.tail)
        pos = {v: i for i, v in enumerate(self.order.tolist())}
        pos[self.root] = n
        for v in nonroot:
            a, p = int(self.parent_arc[v]), int(self.parent[v])
            if not 0 <= a < net.m or src[a] != v or dst[a] != p:
                raise ValueError(f"vertex {v} has a parent arc of the wrong orientation")
            if pos[v] >= pos[p]:
                raise ValueError(f"vertex {v} is not ordered before its parent")


@dataclass(frozen=True, eq=False)
class DemandSums:
    """Per vertex, the total demand in its out-tree subtree (itself included)."""

    values: np.ndarray

    def __getitem__(self, v):
        return self.values[v]


@dataclass(eq=False)
class RoutingTrace:
    """Instrumentation filled in by the routing passes when one is supplied.

    Passing a trace switches the passes onto a plain-Python reference loop,
    so keep traced instances small. With ``snapshots=True`` the supply pass
    also records, after every processed vertex ``v``, the vector of sums of
    current residual supply over already-processed out-tree descendants of
    each vertex; this costs O(n) per step.

    ``supply_history`` holds ``(vertex, before, moved, after)`` per vertex of
    the supply pass; ``demand_history`` holds ``(vertex, net_demand)`` as
    each vertex is processed in the demand pass.
    """

    snapshots: bool = False
    supply_history: list[tuple[int, int, int, int]] = field(default_factory=list)
    demand_history: list[tuple[int, int]] = field(default_factory=list)
    supply_increase: np.ndarray | None = None
    demand_increase: np.ndarray | None = None
    residual_snapshots: list[np.ndarray] = field(default_factory=list)
    total_supply: int | None = None
    in_tree: RootedTree | None = None
    out_tree: RootedTree | None = None
    demand_sums: DemandSums | None = None

    def _begin(self, net: Network) -> None:
        if self.supply_increase is None:
            self.supply_increase = np.zeros(net.m, np.int64)
        if self.demand_increase is None:
            self.demand_increase = np.zeros(net.m, np.int64)


def _check_root(net: Network, root: int) -> int:
    root = int(root)
    if not 0 <= root < net.n:
        raise RangeError(f"root {root + 1} outside 1..{net.n}")
    return root


def build_trees(net: Network, root: int = 0) -> tuple[RootedTree, RootedTree]:
    """Breadth-first in-tree and out-tree spanning ``net`` from ``root``.

    Neighbors are explored by ascending arc index. Returns ``(T, U)``: the
    in-tree (arcs toward the root) and the out-tree (arcs away from it).
    """
    root = _check_root(net, root)
    k = kernels.active()
    n = net.n

    indptr, adj = k.adjacency(n, net.tail, net.head)
    up, found, levels = k.bfs(n, indptr, adj, root)
    if found.size < n:
        raise NotStronglyConnected("forward", found.size, n)
    out_tree = RootedTree.from_search(OUT_TREE, root, up, found, levels)

    indptr, adj = k.adjacency(n, net.head, net.tail)
    up, found, levels = k.bfs(n, indptr, adj, root)
    if found.size < n:
        raise NotStronglyConnected("backward", found.size, n)
    in_tree = RootedTree.from_search(IN_TREE, root, up, found, levels)
    return in_tree, out_tree


def compute_demand_sums(net: Network, out_tree: RootedTree) -> DemandSums:
    demand = np.maximum(-net.imports, 0)
    values = kernels.active().subtree_sums(out_tree.order, out_tree.levels, out_tree.up, demand)
    values.flags.writeable = False
    return DemandSums(values)


def _start_flow(net: Network, flow) -> np.ndarray:
    if flow is None:
        return np.zeros(net.m, np.int64)
    out = np.array(flow.values if isinstance(flow, Flow) else flow, dtype=np.int64, copy=True)
    if out.size != net.m:
        raise LengthMismatch(out.size, net.m)
    return out


def _push_traced(tree, s, room, flow, trace, out_tree):
    s, room, fl = s.tolist(), room.tolist(), flow.tolist()
    parent, parent_arc = tree.parent.tolist(), tree.parent_arc.tolist()
    done = [False] * len(s)
    if trace.snapshots and out_tree is not None:
        up, up_order = out_tree.parent.tolist(), out_tree.order.tolist()
    else:
        up = None
    for v in tree.order.tolist():
        before = s[v]
        x = max(0, min(before, room[v]))
        a = parent_arc[v]
        fl[a] += x
        s[parent[v]] += x
        s[v] -= x
        trace.supply_increase[a] += x
        trace.supply_history.append((v, before, x, s[v]))
        done[v] = True
        if up is not None:
            acc = [sv if d else 0 for sv, d in zip(s, done)]
            for w in up_order:
                acc[up[w]] += acc[w]
            trace.residual_snapshots.append(np.array(acc, np.int64))
    return np.array(fl, np.int64), np.array(s, np.int64)


def _pull_traced(tree, d, flow, trace):
    d, fl = d.tolist(), flow.tolist()
    parent, parent_arc = tree.parent.tolist(), tree.parent_arc.tolist()
    for w in tree.order.tolist():
        dw = d[w]
        trace.demand_history.append((w, dw))
        if dw < 0:
            raise NegativeDemandAtProcessing(w, dw)
        a = parent_arc[w]
        fl[a] += dw
        trace.demand_increase[a] += dw
        d[parent[w]] += dw
    return np.array(fl, np.int64)


def _push(net, tree, room, flow, trace, out_tree):
    s = np.maximum(net.imports, 0)
    flow = _start_flow(net, flow)
    if trace is not None:
        trace._begin(net)
        trace.in_tree = tree
        return _push_traced(tree, s, room, flow, trace, out_tree)
    kernels.active().push_up(tree.order, tree.levels, tree.up, s, room, flow)
    return flow, s


def _pull(net, tree, d, flow, trace):
    flow = _start_flow(net, flow)
    d = np.array(d, np.int64, copy=True)
    if trace is not None:
        trace._begin(net)
        trace.out_tree = tree
        return _pull_traced(tree, d, flow, trace)
    bad = kernels.active().pull_down(tree.order, tree.levels, tree.up, d, flow)
    if bad >= 0:
        raise NegativeDemandAtProcessing(bad)
    return flow


def route_supplies_original(net: Network, in_tree: RootedTree, flow=None, *, trace=None):
    """Move every supply all the way to the root along the in-tree.

    Returns ``(flow, s)`` where ``s`` is the residual supply per vertex; all
    of it ends up on the root.
    """
    room = np.full(net.n, total_supply(net), np.int64)
    return _push(net, in_tree, room, flow, trace, None)


def route_demands_original(net: Network, out_tree: RootedTree, flow=None, demand=None, *, trace=None):
    """Pull every demand from the root down the out-tree; returns the new flow."""
    if demand is None:
        demand = np.maximum(-net.imports, 0)
    return _pull(net, out_tree, demand, flow, trace)


def route_supplies_capped(
    net: Network,
    in_tree: RootedTree,
    demand_sums: DemandSums,
    flow=None,
    *,
    trace: RoutingTrace | None = None,
    out_tree: RootedTree | None = None,
):
    """Move supplies toward the root, but at most ``B - D(v)`` across the arc above ``v``.

    Returns ``(flow, s)``; ``s`` keeps the supply that could not safely move.
    ``out_tree`` is only needed for trace snapshots.
    """
    room = total_supply(net) - np.asarray(demand_sums.values, np.int64)
    if trace is not None:
        trace.demand_sums = demand_sums
    return _push(net, in_tree, room, flow, trace, out_tree)


def route_demands_cancel(net: Network, out_tree: RootedTree, residual, flow, *, trace=None):
    """Pull net demands (demand minus residual supply) down the out-tree.

    Raises :class:`NegativeDemandAtProcessing` if a vertex still holds more
    supply than the demand below it when processed, which cannot happen
    when ``residual`` comes from :func:`route_supplies_capped`.
    """
    d = np.maximum(-net.imports, 0) - np.asarray(residual, np.int64)
    return _pull(net, out_tree, d, flow, trace)


def _require_capacity(net: Network, need: int) -> None:
    if net.m and int(net.cap.min()) < need:
        a = int(np.argmin(net.cap))
        raise CapacityTooSmall(a, int(net.cap[a]), need)


def feasible_flow(net: Network, root: int = 0, *, trace: RoutingTrace | None = None) -> Flow:
    """Feasible flow for a strongly connected network whose capacities are all >= B."""
    supply = total_supply(net)
    _require_capacity(net, supply)
    in_tree, out_tree = build_trees(net, root)
    sums = compute_demand_sums(net, out_tree)
    if trace is not None:
        trace.total_supply = supply
    flow, residual = route_supplies_capped(net, in_tree, sums, trace=trace, out_tree=out_tree)
    flow = route_demands_cancel(net, out_tree, residual, flow, trace=trace)
    return Flow(flow)


def route_original(net: Network, root: int = 0, *, trace: RoutingTrace | None = None) -> np.ndarray:
    """Uncapped supply pass followed by the plain demand pass, without any capacity check."""
    supply = total_supply(net)
    in_tree, out_tree = build_trees(net, root)
    if trace is not None:
        trace.total_supply = supply
        trace.demand_sums = compute_demand_sums(net, out_tree)
    flow, _ = route_supplies_original(net, in_tree, trace=trace)
    return route_demands_original(net, out_tree, flow, trace=trace)


def feasible_flow_double_cap(net: Network, root: int = 0, *, trace: RoutingTrace | None = None) -> Flow:
    """Feasible flow when every capacity is at least twice the total supply."""
    _require_capacity(net, 2 * total_supply(net))
    return Flow(route_original(net, root, trace=trace))
