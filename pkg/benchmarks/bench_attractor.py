"""Compare the numba and numpy attractor kernels.

    python3 benchmarks/bench_attractor.py [--sizes 1000 10000 100000] [--repeat 5]

With ``TEMPGAMES_NUMBA=0`` only the numpy backend is timed. Results of the
two backends are checked for equality before any timing is reported.
"""

import argparse
import time

import numpy as np

from tempgames import _kernels as K


def random_graph(n, degree, seed):
    rng = np.random.default_rng(seed)
    src = np.repeat(np.arange(n), degree)
    dst = rng.integers(0, n, size=src.size)
    owner = rng.integers(1, 3, size=n)
    return K.GameGraph(owner, src, dst)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def backends():
    return ["numba", "numpy"] if K.USE_NUMBA else ["numpy"]


def bench_attractor(sizes, degree, repeat):
    print(f"attractor_ranks, out-degree {degree}, best of {repeat}")
    print(f"{'n':>9} {'edges':>10} " + " ".join(f"{b:>12}" for b in backends()))
    for n in sizes:
        g = random_graph(n, degree, seed=n)
        mine = g.owner == 1
        target = np.zeros(n, dtype=bool)
        target[: max(1, n // 100)] = True
        ref = None
        row = []
        for b in backends():
            out = K.attractor_ranks(g, target, mine, backend=b)  # also warms up the jit
            if ref is None:
                ref = out
            elif not np.array_equal(ref, out):
                raise SystemExit(f"backends disagree at n={n}")
            row.append(best_of(lambda: K.attractor_ranks(g, target, mine, backend=b), repeat))
        print(f"{n:>9} {g.num_edges:>10} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in row))


def bench_reach_matrix(sizes, degree, repeat):
    print(f"\nreach_matrix (all single-target attractors), out-degree {degree}")
    print(f"{'n':>9} " + " ".join(f"{b:>12}" for b in backends()))
    for n in sizes:
        g = random_graph(n, degree, seed=n + 1)
        mine = g.owner == 1
        ref = None
        row = []
        for b in backends():
            out = K.reach_matrix(g, mine, backend=b)
            if ref is None:
                ref = out
            elif not np.array_equal(ref, out):
                raise SystemExit(f"backends disagree at n={n}")
            row.append(best_of(lambda: K.reach_matrix(g, mine, backend=b), repeat))
        print(f"{n:>9} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in row))


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000, 1_000_000])
    p.add_argument("--matrix-sizes", type=int, nargs="+", default=[64, 256, 1024])
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    print(f"default backend: {K.BACKEND}\n")
    bench_attractor(args.sizes, args.degree, args.repeat)
    bench_reach_matrix(args.matrix_sizes, args.degree, max(1, args.repeat // 2))


if __name__ == "__main__":
    main()
