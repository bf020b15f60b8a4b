"""Network and flow data model plus the structural predicates the solvers rely on.

Vertices and arcs are stored 0-based: the vertex numbered ``v`` in files
and on the command line lives at index ``v - 1``, and likewise for arcs.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ImportImbalance, LengthMismatch, RangeError

#: Largest accepted capacity, import magnitude or total supply.
MAX_MAGNITUDE = 2**62


def _frozen(values, name: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.size and arr.dtype.kind not in "iub":
        raise TypeError(f"{name} must be integers, got dtype {arr.dtype}")
    arr = np.array(arr, dtype=np.int64, copy=True).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Network:
    """Directed multigraph with integer capacities and vertex imports.

    ``tail``, ``head`` and ``cap`` hold one entry per arc; ``imports`` holds
    one entry per vertex (positive = supply, negative = demand). Parallel
    arcs and self-loops are allowed.
    """

    n: int
    tail: np.ndarray
    head: np.ndarray
    cap: np.ndarray
    imports: np.ndarray

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise RangeError(f"vertex count must be positive, got {n}")
        object.__setattr__(self, "n", n)
        for name in ("tail", "head", "cap", "imports"):
            object.__setattr__(self, name, _frozen(getattr(self, name), name))
        if not (self.tail.size == self.head.size == self.cap.size):
            raise ValueError("tail, head and cap must have equal length")
        if self.imports.size != n:
            raise ValueError(f"imports must have length {n}, got {self.imports.size}")
        for ends in (self.tail, self.head):
            if ends.size and (ends.min() < 0 or ends.max() >= n):
                bad = int(np.flatnonzero((ends < 0) | (ends >= n))[0])
                raise RangeError(f"arc {bad + 1} has an endpoint outside 1..{n}")
        if self.cap.size:
            if self.cap.min() < 0:
                bad = int(np.argmin(self.cap))
                raise RangeError(f"arc {bad + 1} has negative capacity {int(self.cap[bad])}")
            if self.cap.max() > MAX_MAGNITUDE:
                raise RangeError("capacity exceeds 2^62")
        if n and np.abs(self.imports).max() > MAX_MAGNITUDE:
            raise RangeError("import magnitude exceeds 2^62")

    @classmethod
    def from_arcs(
        cls,
        n: int,
        arcs: Iterable[tuple[int, int, int]] = (),
        imports: Mapping[int, int] | None = None,
    ) -> Network:
        """Build a network from 1-based ``(tail, head, capacity)`` triples and a
        ``{vertex: import}`` mapping (missing vertices import 0)."""
        arcs = list(arcs)
        b = np.zeros(n, np.int64)
        for v, val in (imports or {}).items():
            if not 1 <= v <= n:
                raise RangeError(f"import for vertex {v} outside 1..{n}")
            b[v - 1] = val
        tail = np.array([a[0] for a in arcs], np.int64) - 1
        head = np.array([a[1] for a in arcs], np.int64) - 1
        cap = np.array([a[2] for a in arcs], np.int64)
        return cls(n, tail, head, cap, b)

    @property
    def m(self) -> int:
        return int(self.tail.size)

    def arcs(self) -> list[tuple[int, int, int]]:
        """Arcs as 1-based ``(tail, head, capacity)`` triples."""
        return [(int(t) + 1, int(h) + 1, int(c)) for t, h, c in zip(self.tail, self.head, self.cap)]

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.tail, other.tail)
            and np.array_equal(self.head, other.head)
            and np.array_equal(self.cap, other.cap)
            and np.array_equal(self.imports, other.imports)
        )

    __hash__ = None

    def __repr__(self):
        return f"Network(n={self.n}, m={self.m}, B={int(np.maximum(self.imports, 0).sum())})"


@dataclass(frozen=True, eq=False)
class Flow:
    """One integer value per arc, aligned with ``Network.tail``/``head``.

    Negative values are representable so that a verifier can report them.
    """

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values, "values"))

    def __len__(self):
        return int(self.values.size)

    def __eq__(self, other):
        if not isinstance(other, Flow):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    __hash__ = None

    def check_against(self, net: Network) -> None:
        if self.values.size != net.m:
            raise LengthMismatch(self.values.size, net.m)


def total_supply(net: Network) -> int:
    """Sum of positive imports; raises :class:`ImportImbalance` unless imports sum to zero."""
    b = net.imports
    # int64 sums are exact unless n * max|b| can reach 2^63
    exact = np.int64 if int(np.abs(b).max()) * b.size < 2**63 else object
    residual = int(b.sum(dtype=exact))
    if residual != 0:
        raise ImportImbalance(residual)
    supply = int(np.maximum(b, 0).sum(dtype=exact))
    if supply > MAX_MAGNITUDE:
        raise RangeError("total supply exceeds 2^62")
    return supply


def reachable_count(net: Network, root: int = 0, *, backward: bool = False) -> int:
    """Number of vertices reachable from ``root`` (or reaching it, if ``backward``)."""
    k = kernels.active()
    near, far = (net.head, net.tail) if backward else (net.tail, net.head)
    indptr, adj = k.adjacency(net.n, near, far)
    _, found, _ = k.bfs(net.n, indptr, adj, root)
    return int(found.size)


def is_strongly_connected(net: Network) -> bool:
    """True iff every vertex reaches every other; two searches from vertex 1."""
    return reachable_count(net) == net.n and reachable_count(net, backward=True) == net.n


def reverse(net: Network) -> Network:
    """Same network with every arc turned around; arc order and imports kept."""
    return Network(net.n, net.head, net.tail, net.cap, net.imports)
