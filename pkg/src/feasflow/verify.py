"""Independent checks: a balance/capacity verifier and a max-flow feasibility oracle.

Nothing here shares code with the tree-routing solver. The oracle reduces
feasibility to one maximum-flow problem (super-source feeding every
supply, super-sink draining every demand) and solves it with
shortest-augmenting-path search in plain Python.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import Disagreement
from .network import Flow, Network, total_supply


@dataclass(frozen=True, eq=False)
class VerifyReport:
    """Result of checking a flow against a network.

    ``balances[v]`` is import plus inflow minus outflow at vertex ``v``.
    Violations list 0-based arc ids with the offending values.
    """

    balances: np.ndarray
    capacity_violations: list[tuple[int, int, int]]
    negativity_violations: list[tuple[int, int]]

    @property
    def feasible(self) -> bool:
        return (
            not self.capacity_violations
            and not self.negativity_violations
            and not np.any(self.balances)
        )

    def nonzero_balances(self) -> list[tuple[int, int]]:
        return [(int(v), int(self.balances[v])) for v in np.flatnonzero(self.balances)]


def verify_flow(net: Network, flow: Flow) -> VerifyReport:
    """Compute every vertex balance exactly and flag out-of-range arc values."""
    if not isinstance(flow, Flow):
        flow = Flow(flow)
    flow.check_against(net)
    f = flow.values
    big = max(int(np.abs(f).max(initial=0)), int(np.abs(net.imports).max(initial=0)))
    # Per-vertex sums stay exact in int64 while (m + 1) * max|value| < 2^63.
    dtype = np.int64 if big * (net.m + 1) < 2**63 else object
    bal = net.imports.astype(dtype)
    np.add.at(bal, net.head, f.astype(dtype))
    np.subtract.at(bal, net.tail, f.astype(dtype))
    over = np.flatnonzero(f > net.cap)
    neg = np.flatnonzero(f < 0)
    return VerifyReport(
        balances=bal,
        capacity_violations=[(int(a), int(f[a]), int(net.cap[a])) for a in over],
        negativity_violations=[(int(a), int(f[a])) for a in neg],
    )


class _Residual:
    """Residual graph with paired edges: edge ``e`` and ``e ^ 1`` are reverses."""

    def __init__(self, size: int):
        self.adj: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.room: list[int] = []

    def add(self, u: int, v: int, c: int) -> int:
        e = len(self.to)
        self.to += [v, u]
        self.room += [c, 0]
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            via = [-1] * len(self.adj)
            via[s] = -2
            queue = deque([s])
            while queue and via[t] == -1:
                u = queue.popleft()
                for e in self.adj[u]:
                    v = self.to[e]
                    if via[v] == -1 and self.room[e] > 0:
                        via[v] = e
                        queue.append(v)
            if via[t] == -1:
                return total
            push = None
            v = t
            while v != s:
                e = via[v]
                push = self.room[e] if push is None else min(push, self.room[e])
                v = self.to[e ^ 1]
            v = t
            while v != s:
                e = via[v]
                self.room[e] -= push
                self.room[e ^ 1] += push
                v = self.to[e ^ 1]
            total += push


def oracle_feasible(net: Network) -> tuple[bool, Flow | None]:
    """Decide feasibility by max-flow; return ``(feasible, witness or None)``.

    Meant for oracle duty on small instances (a few hundred vertices).
    """
    supply = total_supply(net)
    n = net.n
    source, sink = n, n + 1
    g = _Residual(n + 2)
    arc_edges = [g.add(int(u), int(v), int(c)) for u, v, c in zip(net.tail, net.head, net.cap)]
    for v, b in enumerate(net.imports.tolist()):
        if b > 0:
            g.add(source, v, b)
        elif b < 0:
            g.add(v, sink, -b)
    value = g.max_flow(source, sink)
    if value != supply:
        return False, None
    return True, Flow([g.room[e ^ 1] for e in arc_edges])


@dataclass(frozen=True, eq=False)
class CrossCheck:
    flow: Flow
    report: VerifyReport
    oracle_says_feasible: bool
    witness_report: VerifyReport | None

    @property
    def agree(self) -> bool:
        witness_ok = self.witness_report is not None and self.witness_report.feasible
        return self.report.feasible and self.oracle_says_feasible and witness_ok


def cross_check(net: Network, root: int = 0, *, strict: bool = True) -> CrossCheck:
    """Solve with the capped tree router, then confirm with the verifier and the oracle.

    With ``strict`` (the default) any conflict raises :class:`Disagreement`.
    """
    from .routing import feasible_flow

    flow = feasible_flow(net, root)
    report = verify_flow(net, flow)
    ok, witness = oracle_feasible(net)
    record = CrossCheck(flow, report, ok, verify_flow(net, witness) if ok else None)
    if strict and not record.agree:
        raise Disagreement(
            f"solver flow feasible={report.feasible}, oracle feasible={ok}, "
            f"oracle witness feasible={record.witness_report.feasible if ok else None}"
        )
    return record
