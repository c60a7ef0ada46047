"""Compare the compiled and pure-Python subset-hafnian kernels.

Run with ``python benchmarks/bench_kernels.py [--sizes 10 12 14] [--repeat 3]``.
Each row reports the best wall time per backend and the speedup; results of
the two backends are checked for equality before timing is reported.
"""
import argparse
import random
import time

import numpy as np

from gbsdual import kernels


def random_rows(k, seed, density=0.6, high=3):
    rng = random.Random(seed)
    rows = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < density:
                rows[i][j] = rows[j][i] = rng.randint(-high, high)
    return rows


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(name, k, fn, repeat, same):
    tp, rp = best_time(lambda: fn("python"), repeat)
    tc, rc = best_time(lambda: fn("cython"), repeat)
    if not same(rp, rc):
        raise AssertionError(f"{name} k={k}: backends disagree")
    print(f"{name:<22}{k:>4}{tp:>12.4f}{tc:>12.4f}{tp / max(tc, 1e-9):>10.1f}x")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 10, 12, 14, 16])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")

    print(f"{'kernel':<22}{'k':>4}{'python [s]':>12}{'cython [s]':>12}{'speedup':>11}")
    for k in args.sizes:
        rows = random_rows(k, seed=k)
        bench("subset_hafnians", k, lambda b: kernels.subset_hafnians(rows, backend=b), args.repeat,
              lambda a, b: a == b)
        bench("graded_hafnian_sums", k, lambda b: kernels.graded_hafnian_sums(rows, backend=b), args.repeat,
              lambda a, b: a == b)
        frows = np.asarray(rows, dtype=float) * 0.1
        bench("subset_hafnians_float", k, lambda b: kernels.subset_hafnians_float(frows, backend=b), args.repeat,
              lambda a, b: np.allclose(a, b, rtol=1e-10, atol=1e-14))


if __name__ == "__main__":
    main()
