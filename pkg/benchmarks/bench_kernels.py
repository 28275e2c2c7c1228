"""Timing comparison between the compiled kernels and their pure twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

Workloads are sized so the interpreter loop dominates the pure timings;
best-of-N wall times are reported with the speedup factor.
"""

import argparse
import random
import time

from mcilp import _core_py

try:
    from mcilp import _core
except ImportError:
    _core = None


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def workloads():
    rng = random.Random(20260816)

    # odometer over a 4-cube minus a halfspace, ~130k candidate points
    A = [tuple(1 if j == i else 0 for j in range(4)) for i in range(4)]
    A += [tuple(-x for x in row) for row in A]
    A.append((1, 1, 1, 1))
    b = (18,) * 8 + (30,)
    yield "lattice_scan", (tuple(A), b, (0, 0, 0, 0), (18, 18, 18, 18))

    pts = [tuple(rng.randrange(-400, 400) for _ in range(3))
           for _ in range(2500)]
    yield "pareto_filter", (pts,)

    keys = sorted({tuple(rng.randrange(-3000, 3000) for _ in range(2))
                   for _ in range(200000)})
    yield "count_in_slab", (keys, (-1500, -1500), (1500, 1500))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    header = f"{'kernel':<16}{'python':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, call_args in workloads():
        pure = best_of(getattr(_core_py, name), call_args, args.repeat)
        if _core is None:
            print(f"{name:<16}{pure:>11.4f}s {'(no extension)':>21}")
            continue
        fast = best_of(getattr(_core, name), call_args, args.repeat)
        assert getattr(_core, name)(*call_args) == \
            getattr(_core_py, name)(*call_args)
        print(f"{name:<16}{pure:>11.4f}s{fast:>11.4f}s{pure / fast:>9.1f}x")


if __name__ == "__main__":
    main()
