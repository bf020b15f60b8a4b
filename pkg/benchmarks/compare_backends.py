"""Time the numba and numpy backends on the same generated instances.

    python benchmarks/compare_backends.py --sizes 1e4,1e5,1e6

Each row reports best-of-``--repeat`` solve seconds per backend and the
numpy/numba speed ratio. Flows from both backends are checked for equality.
"""

import argparse

from feasflow import feasible_flow, kernels
from feasflow.bench import bench_network, time_solve


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--sizes", default="1e4,1e5,1e6")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args()
    sizes = [int(float(s)) for s in args.sizes.split(",")]
    backends = sorted(kernels.BACKENDS)

    print(f"{'n':>9} {'m':>9} " + " ".join(f"{b + ' s':>10}" for b in backends) + "  speedup")
    for n in sizes:
        net = bench_network(n, args.seed)
        times = {b: time_solve(net, b, args.repeat) for b in backends}
        flows = []
        for b in backends:
            with kernels.using(b):
                flows.append(feasible_flow(net))
        assert all(f == flows[0] for f in flows), "backends disagree"
        speedup = times["numpy"] / times["numba"] if "numba" in times else float("nan")
        cols = " ".join(f"{times[b]:10.4f}" for b in backends)
        print(f"{net.n:>9} {net.m:>9} {cols}  {speedup:6.1f}x", flush=True)


if __name__ == "__main__":
    main()
