"""Seeded strongly connected test networks and hand-built tight fixtures.

Random draws come from ``numpy.random.Generator(PCG64(seed))`` in a fixed
sequence (backbone permutation, extra tails, extra heads, import vertices,
supply cuts, demand cuts, capacities), so a spec always yields the same
network with a given numpy release.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpecInvalid
from .network import MAX_MAGNITUDE, Network

CAPACITY_MODES = ("exact-B", "at-least-B", "at-least-2B", "below-B")


@dataclass(frozen=True)
class GenSpec:
    n: int
    m_extra: int = 0
    total_supply: int = 1
    capacity_mode: str = "exact-B"
    supply_spread: int = 1
    demand_spread: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise SpecInvalid(f"n must be >= 1, got {self.n}")
        if self.m_extra < 0:
            raise SpecInvalid("m_extra must be >= 0")
        if not 0 <= self.total_supply <= MAX_MAGNITUDE:
            raise SpecInvalid(f"total supply must lie in [0, 2^62], got {self.total_supply}")
        if self.capacity_mode not in CAPACITY_MODES:
            raise SpecInvalid(f"capacity_mode must be one of {CAPACITY_MODES}")
        for name in ("supply_spread", "demand_spread"):
            k = getattr(self, name)
            if not 0 <= k <= self.n:
                raise SpecInvalid(f"{name} must lie in [0, n], got {k}")
            if k == 0 and self.total_supply > 0:
                raise SpecInvalid(f"{name} is 0 but total supply is positive")
        if not 0 <= self.seed < 2**64:
            raise SpecInvalid("seed must be a 64-bit unsigned integer")
        if self.capacity_mode == "at-least-2B" and 2 * self.total_supply > MAX_MAGNITUDE:
            raise SpecInvalid("2B exceeds the 2^62 capacity limit")
        if self.capacity_mode == "below-B" and self.total_supply == 0:
            raise SpecInvalid("below-B needs a positive total supply")


def _split(rng: np.random.Generator, total: int, parts: int) -> np.ndarray:
    if parts == 0:
        return np.zeros(0, np.int64)
    cuts = np.sort(rng.integers(0, total, size=parts - 1, endpoint=True))
    return np.diff(np.concatenate(([0], cuts, [total]))).astype(np.int64)


def generate(spec: GenSpec) -> Network:
    """Random network, strongly connected by construction.

    A random Hamiltonian cycle comes first in arc order, followed by
    ``m_extra`` uniformly random arcs (self-loops and parallels possible).
    Supply and demand vertices are disjoint whenever the two spreads fit in
    ``n``; otherwise they overlap and the realized total supply can be
    smaller than requested.
    """
    rng = np.random.default_rng(spec.seed)
    n, B = spec.n, spec.total_supply

    if n > 1:
        cycle = rng.permutation(n).astype(np.int64)
        tail = [cycle, rng.integers(0, n, spec.m_extra)]
        head = [np.roll(cycle, -1), rng.integers(0, n, spec.m_extra)]
    else:
        tail = [np.zeros(spec.m_extra, np.int64)]
        head = [np.zeros(spec.m_extra, np.int64)]
    tail = np.concatenate(tail).astype(np.int64)
    head = np.concatenate(head).astype(np.int64)
    m = tail.size

    picks = rng.permutation(n)
    ks, kd = spec.supply_spread, spec.demand_spread
    sources = picks[:ks]
    sinks = picks[ks:ks + kd] if ks + kd <= n else picks[n - kd:]
    imports = np.zeros(n, np.int64)
    np.add.at(imports, sources, _split(rng, B, ks))
    np.subtract.at(imports, sinks, _split(rng, B, kd))

    mode = spec.capacity_mode
    if mode == "exact-B":
        cap = np.full(m, B, np.int64)
    elif mode == "at-least-B":
        cap = B + rng.integers(0, min(B, MAX_MAGNITUDE - B), m, endpoint=True)
    elif mode == "at-least-2B":
        cap = 2 * B + rng.integers(0, min(B, MAX_MAGNITUDE - 2 * B), m, endpoint=True)
    else:
        cap = rng.integers(0, B, m)
    return Network(n, tail, head, cap, imports)


def two_cycle_unit() -> Network:
    return Network.from_arcs(2, [(1, 2, 1), (2, 1, 1)], {1: 1, 2: -1})


def shared_arc_tight(supply: int = 1) -> Network:
    """3-cycle, capacities B, supply B at vertex 2 and demand B at 3; arc (2,3) is in both trees."""
    B = supply
    return Network.from_arcs(3, [(1, 2, B), (2, 3, B), (3, 1, B)], {2: B, 3: -B})


def deep_chain(k: int = 3, supply: int = 1) -> Network:
    """Directed 2k-cycle, capacities B, supply at vertex 2 and demand k steps ahead.

    Rooted at vertex 1 the arcs from 2 up to k+2 lie in both trees, so the
    uncapped routing stacks 2B on each of them.
    """
    if k < 1:
        raise SpecInvalid("deep chain needs k >= 1")
    n = 2 * k
    arcs = [(v, v % n + 1, supply) for v in range(1, n + 1)]
    return Network.from_arcs(n, arcs, {2: supply, (1 + k) % n + 1: -supply})


def tight_fixtures() -> dict[str, Network]:
    return {
        "shared-arc-tight": shared_arc_tight(),
        "two-cycle-unit": two_cycle_unit(),
        "deep-chain": deep_chain(3),
    }
