"""Compare the compiled and pure-Python row-reduction kernels.

Run ``python3 benchmarks/bench_kernels.py``. Prints one line per
(kernel, field, size) with the best-of-N wall time, then an end-to-end
timing of the triangular product example under each backend.
"""

import argparse
import os
import random
import subprocess
import sys
import time
import numpy as np

from excycles.exactlin import backend

P = 101


def _sparse_modp(rng, n, m, density):
    a = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for j in range(m):
            if rng.random() < density:
                a[i, j] = rng.randrange(1, P)
    return a


def _sparse_rows(rng, n, m, density):
    # small integer entries, like the intertwiner and relation systems built by the library
    return [[rng.randint(-2, 2) if rng.random() < density else 0 for _ in range(m)] for _ in range(n)]


def best_of(fn, reps):
    best = float("inf")
    for _ in range(reps):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def bench_kernels(sizes, reps, density):
    rng = random.Random(0)
    for n in sizes:
        a = _sparse_modp(rng, n, n, density)
        rows = _sparse_rows(rng, n, n, density)
        for name, (modp, obj) in sorted(backend.KERNELS.items()):
            t1 = best_of(lambda: modp(a.copy(), P), reps)
            t2 = best_of(lambda: obj([list(r) for r in rows], n), reps)
            print(f"{name:7s} n={n:4d}  F_{P}: {t1 * 1e3:9.2f} ms   Q: {t2 * 1e3:9.2f} ms")


def bench_product():
    here = os.path.dirname(os.path.abspath(__file__))
    data = os.path.join(here, "..", "src", "excycles", "data", "examples")
    cmd = [sys.executable, "-m", "excycles", "product",
           os.path.join(data, "A.cycle.json"), os.path.join(data, "B.cycle.json")]
    for label, pure in (("cython", "0"), ("python", "1")):
        if label not in backend.KERNELS:
            continue
        env = dict(os.environ, EXCYCLES_PURE=pure)
        for field in ("rational", "fp:101"):
            t = time.perf_counter()
            subprocess.run(cmd + ["--field", field], env=env, check=True, capture_output=True)
            print(f"{label:7s} product example ({field}): {time.perf_counter() - t:6.2f} s")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="*", default=[40, 100, 200])
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--density", type=float, default=0.15)
    ap.add_argument("--skip-product", action="store_true")
    args = ap.parse_args()
    print(f"available kernels: {sorted(backend.KERNELS)}; default {backend.NAME}")
    bench_kernels(args.sizes, args.reps, args.density)
    if not args.skip_product:
        bench_product()


if __name__ == "__main__":
    main()
