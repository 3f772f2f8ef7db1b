"""Compare the compiled and numpy convolution / moment kernels.

    python benchmarks/bench_kernels.py [--sizes 50 200 1000] [--repeat 5]
"""
import argparse
import time

import numpy as np

from premia import kernels
from premia.dist import MERGE_TOL


def make(rng, n, grid):
    if grid:
        x = np.sort(rng.choice(np.arange(10 * n), size=n, replace=False)).astype(float)
    else:
        x = np.sort(rng.uniform(0, 1000, size=n))
    p = rng.uniform(0.01, 1, size=n)
    return x, p / p.sum()


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[50, 200, 1000])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = sorted(kernels.BACKENDS)
    if "cython" not in backends:
        print("compiled kernels not built; only the fallback is timed")
    rng = np.random.default_rng(0)
    header = f"{'kernel':<12}{'support':<10}{'n x m':>12}" + "".join(f"{b:>14}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for n in args.sizes:
        for grid in (True, False):
            xa, pa = make(rng, n, grid)
            xb, pb = make(rng, n, grid)
            row = []
            for name in backends:
                k = kernels.BACKENDS[name]
                row.append(best_of(lambda: k.convolve_sorted(xa, pa, xb, pb, MERGE_TOL, 10**7), args.repeat))
            line = f"{'convolve':<12}{'grid' if grid else 'real':<10}{f'{n}x{n}':>12}"
            line += "".join(f"{t * 1e3:>12.2f}ms" for t in row)
            if len(row) == 2:
                line += f"{row[1] / row[0]:>9.1f}x"  # python / cython
            print(line)
    for n in (10**4, 10**6):
        x, p = make(rng, n, False)
        row = [best_of(lambda: kernels.BACKENDS[b].log_moment_shifted(x, p, 0.01, x[-1]), args.repeat) for b in backends]
        line = f"{'log_moment':<12}{'real':<10}{n:>12}" + "".join(f"{t * 1e3:>12.2f}ms" for t in row)
        if len(row) == 2:
            line += f"{row[1] / row[0]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
