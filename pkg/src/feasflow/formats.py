"""Line-based text formats for networks and flows.

Network document::

    c any comment
    p feas <n> <m>
    n <vertex> <import>        (omitted vertices import 0)
    a <tail> <head> <capacity> (arc ids follow line order)

Flow document::

    s feasible|infeasible
    f <arc> <tail> <head> <value>

All ids are 1-based in text.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import DuplicateImport, LengthMismatch, NetworkSyntaxError, RangeError
from .network import MAX_MAGNITUDE, Flow, Network
from .verify import verify_flow

_INT = re.compile(r"-?[0-9]+")


def _ints(fields: list[str], count: int, lineno: int, what: str) -> list[int]:
    if len(fields) != count:
        raise NetworkSyntaxError(f"{what} line needs {count} integers, got {len(fields)}", lineno)
    out = []
    for tok in fields:
        if not _INT.fullmatch(tok):
            raise NetworkSyntaxError(f"not a decimal integer: {tok!r}", lineno)
        out.append(int(tok))
    return out


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if fields and fields[0] != "c":
            yield lineno, fields


def parse_network(text: str) -> Network:
    n = m = None
    imports: dict[int, int] = {}
    tail: list[int] = []
    head: list[int] = []
    cap: list[int] = []
    last = 0
    for lineno, fields in _lines(text):
        last = lineno
        kind, rest = fields[0], fields[1:]
        if kind == "p":
            if n is not None:
                raise NetworkSyntaxError("second problem line", lineno)
            if len(rest) != 3 or rest[0] != "feas":
                raise NetworkSyntaxError("problem line must read 'p feas <n> <m>'", lineno)
            n, m = _ints(rest[1:], 2, lineno, "problem")
            if n < 1:
                raise RangeError(f"vertex count must be positive, got {n}", lineno)
            if m < 0:
                raise RangeError(f"arc count must be nonnegative, got {m}", lineno)
            continue
        if n is None:
            raise NetworkSyntaxError(f"'{kind}' line before the problem line", lineno)
        if kind == "n":
            v, b = _ints(rest, 2, lineno, "import")
            if not 1 <= v <= n:
                raise RangeError(f"vertex {v} outside 1..{n}", lineno)
            if abs(b) > MAX_MAGNITUDE:
                raise RangeError("import magnitude exceeds 2^62", lineno)
            if v in imports:
                raise DuplicateImport(f"second import line for vertex {v}", lineno)
            imports[v] = b
        elif kind == "a":
            t, h, c = _ints(rest, 3, lineno, "arc")
            for v in (t, h):
                if not 1 <= v <= n:
                    raise RangeError(f"vertex {v} outside 1..{n}", lineno)
            if c < 0:
                raise RangeError(f"negative capacity {c}", lineno)
            if c > MAX_MAGNITUDE:
                raise RangeError("capacity exceeds 2^62", lineno)
            if len(tail) == m:
                raise NetworkSyntaxError(f"more than the declared {m} arcs", lineno)
            tail.append(t - 1)
            head.append(h - 1)
            cap.append(c)
        else:
            raise NetworkSyntaxError(f"unknown line type {kind!r}", lineno)
    if n is None:
        raise NetworkSyntaxError("missing problem line", last or None)
    if len(tail) != m:
        raise NetworkSyntaxError(f"declared {m} arcs, found {len(tail)}", last or None)
    if sum(b for b in imports.values() if b > 0) > MAX_MAGNITUDE:
        raise RangeError("total supply exceeds 2^62")
    b = np.zeros(n, np.int64)
    for v, val in imports.items():
        b[v - 1] = val
    return Network(n, np.array(tail, np.int64), np.array(head, np.int64), np.array(cap, np.int64), b)


def format_network(net: Network) -> str:
    out = [f"p feas {net.n} {net.m}\n"]
    out += [f"n {v + 1} {int(net.imports[v])}\n" for v in np.flatnonzero(net.imports)]
    out += [f"a {t + 1} {h + 1} {c}\n" for t, h, c in zip(net.tail.tolist(), net.head.tolist(), net.cap.tolist())]
    return "".join(out)


def serialize_flow(net: Network, flow: Flow) -> str:
    """Flow document with a status line computed by the verifier."""
    if not isinstance(flow, Flow):
        flow = Flow(flow)
    flow.check_against(net)
    status = "feasible" if verify_flow(net, flow).feasible else "infeasible"
    out = [f"s {status}\n"]
    out += [
        f"f {a} {t + 1} {h + 1} {x}\n"
        for a, (t, h, x) in enumerate(zip(net.tail.tolist(), net.head.tolist(), flow.values.tolist()), start=1)
    ]
    return "".join(out)


def parse_flow(text: str, net: Network) -> Flow:
    """Read a flow document for ``net``; every arc must appear exactly once."""
    values: list[int | None] = [None] * net.m
    seen_status = False
    for lineno, fields in _lines(text):
        kind, rest = fields[0], fields[1:]
        if kind == "s":
            if seen_status or rest not in (["feasible"], ["infeasible"]):
                raise NetworkSyntaxError("bad or repeated status line", lineno)
            seen_status = True
        elif kind == "f":
            a, t, h, x = _ints(rest, 4, lineno, "flow")
            if not 1 <= a <= net.m:
                raise RangeError(f"arc {a} outside 1..{net.m}", lineno)
            if (t - 1, h - 1) != (int(net.tail[a - 1]), int(net.head[a - 1])):
                raise RangeError(f"arc {a} endpoints ({t},{h}) do not match the network", lineno)
            if abs(x) > MAX_MAGNITUDE:
                raise RangeError("flow magnitude exceeds 2^62", lineno)
            if values[a - 1] is not None:
                raise NetworkSyntaxError(f"arc {a} listed twice", lineno)
            values[a - 1] = x
        else:
            raise NetworkSyntaxError(f"unknown line type {kind!r}", lineno)
    missing = sum(v is None for v in values)
    if missing:
        raise LengthMismatch(net.m - missing, net.m)
    return Flow(np.array(values, np.int64))
