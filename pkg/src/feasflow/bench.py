"""Timing helpers shared by ``feasflow bench`` and ``benchmarks/compare_backends.py``."""

from __future__ import annotations

import time

from . import kernels
from .generate import GenSpec, generate
from .network import Network
from .routing import feasible_flow


def bench_network(n: int, seed: int, extra_per_vertex: int = 3, supply: int = 1000) -> Network:
    """Exact-capacity instance with ``m = (1 + extra_per_vertex) * n`` arcs."""
    spread = max(1, min(n // 2, 64))
    return generate(
        GenSpec(
            n=n,
            m_extra=extra_per_vertex * n,
            total_supply=supply,
            capacity_mode="exact-B",
            supply_spread=spread,
            demand_spread=spread,
            seed=seed,
        )
    )


def warm_up(backend: str) -> None:
    """Trigger JIT compilation so it is not billed to the first timed solve."""
    with kernels.using(backend):
        feasible_flow(bench_network(4, 0))


def time_solve(net: Network, backend: str | None = None, repeat: int = 1) -> float:
    """Best wall-clock seconds of ``repeat`` solves of ``net``."""
    backend = backend or kernels.active_name()
    warm_up(backend)
    best = float("inf")
    with kernels.using(backend):
        for _ in range(repeat):
            start = time.perf_counter()
            feasible_flow(net)
            best = min(best, time.perf_counter() - start)
    return best
