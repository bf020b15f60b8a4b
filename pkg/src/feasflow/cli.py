"""Command-line driver: ``feasflow {solve,verify,gen,oracle,bench}``.

Exit codes: 0 success or feasible, 1 infeasible or failed verification,
2 bad input or unmet preconditions.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import kernels
from .bench import bench_network, time_solve
from .errors import FeasFlowError
from .formats import format_network, parse_flow, parse_network, serialize_flow
from .generate import GenSpec, generate
from .routing import RoutingTrace, feasible_flow, feasible_flow_double_cap
from .verify import oracle_feasible, verify_flow

CAPS = {"exact": "exact-B", "atleast": "at-least-B", "double": "at-least-2B", "below": "below-B"}

# Residual snapshots are O(n^2); only print them for small networks.
SNAPSHOT_LIMIT = 50


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Fail(2, f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump_trace(net, trace: RoutingTrace) -> None:
    err = sys.stderr
    print(f"trace: total supply {trace.total_supply}", file=err)
    for v, before, moved, after in trace.supply_history:
        print(f"supply pass: vertex {v + 1} holds {before}, moves {moved}, keeps {after}", file=err)
    for w, d in trace.demand_history:
        print(f"demand pass: vertex {w + 1} net demand {d}", file=err)
    for a in range(net.m):
        up, down = int(trace.supply_increase[a]), int(trace.demand_increase[a])
        if up or down:
            print(
                f"arc {a + 1} ({net.tail[a] + 1}->{net.head[a] + 1}): +{up} supply pass, +{down} demand pass",
                file=err,
            )
    if trace.snapshots and trace.demand_sums is not None:
        limits = " ".join(str(int(x)) for x in trace.demand_sums.values)
        print(f"demand sums: {limits}", file=err)
        for (v, *_), snap in zip(trace.supply_history, trace.residual_snapshots):
            sums = " ".join(str(int(x)) for x in snap)
            print(f"residual subtree sums after vertex {v + 1}: {sums}", file=err)


def cmd_solve(args) -> int:
    net = parse_network(_read(args.network))
    solver = feasible_flow if args.algorithm == "cap1" else feasible_flow_double_cap
    trace = RoutingTrace(snapshots=net.n <= SNAPSHOT_LIMIT) if args.trace else None
    flow = solver(net, args.root - 1, trace=trace)
    if trace is not None:
        _dump_trace(net, trace)
    _emit(serialize_flow(net, flow), args.out)
    return 0 if verify_flow(net, flow).feasible else 1


def cmd_verify(args) -> int:
    net = parse_network(_read(args.network))
    flow = parse_flow(_read(args.flow), net)
    report = verify_flow(net, flow)
    lines = [f"s {'feasible' if report.feasible else 'infeasible'}"]
    lines += [f"balance {v + 1} {b}" for v, b in report.nonzero_balances()]
    lines += [f"over {a + 1} {f} {c}" for a, f, c in report.capacity_violations]
    lines += [f"negative {a + 1} {f}" for a, f in report.negativity_violations]
    print("\n".join(lines))
    return 0 if report.feasible else 1


def cmd_gen(args) -> int:
    spec = GenSpec(
        n=args.n,
        m_extra=args.extra,
        total_supply=args.supply,
        capacity_mode=CAPS[args.caps],
        supply_spread=args.spread_s,
        demand_spread=args.spread_d,
        seed=args.seed,
    )
    _emit(format_network(generate(spec)), args.out)
    return 0


def cmd_oracle(args) -> int:
    net = parse_network(_read(args.network))
    ok, witness = oracle_feasible(net)
    print("feasible" if ok else "infeasible")
    if ok and args.witness:
        sys.stdout.write(serialize_flow(net, witness))
    return 0 if ok else 1


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return sizes


def cmd_bench(args) -> int:
    backends = sorted(kernels.BACKENDS) if args.compare else [kernels.active_name()]
    print("\t".join(["n", "m"] + [f"{b}_seconds" for b in backends]))
    for n in args.sizes:
        net = bench_network(n, args.seed, args.extra_per_vertex, args.supply)
        times = [time_solve(net, b, args.repeat) for b in backends]
        print("\t".join([str(net.n), str(net.m)] + [f"{t:.6f}" for t in times]), flush=True)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="feasflow", description="Feasible flows in strongly connected networks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="compute a feasible flow")
    s.add_argument("network")
    s.add_argument("--algorithm", choices=("cap1", "cap2"), default="cap1")
    s.add_argument("--root", type=int, default=1)
    s.add_argument("--out")
    s.add_argument("--trace", action="store_true", help="dump the routing trace to stderr")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a flow file against a network")
    v.add_argument("network")
    v.add_argument("flow")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="generate a random strongly connected network")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--extra", type=int, default=0)
    g.add_argument("--supply", type=int, default=1)
    g.add_argument("--caps", choices=tuple(CAPS), default="exact")
    g.add_argument("--spread-s", type=int, default=1)
    g.add_argument("--spread-d", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("oracle", help="decide feasibility by max-flow")
    o.add_argument("network")
    o.add_argument("--witness", action="store_true")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", help="time the solver on generated instances")
    b.add_argument("--sizes", type=_sizes, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--extra-per-vertex", type=int, default=3)
    b.add_argument("--supply", type=int, default=1000)
    b.add_argument("--repeat", type=int, default=1)
    b.add_argument("--compare", action="store_true", help="time every available backend")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"feasflow: {exc}", file=sys.stderr)
        return exc.code
    except FeasFlowError as exc:
        print(f"feasflow: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
