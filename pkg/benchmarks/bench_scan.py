"""Benchmark the flat-scan kernel: numba @njit loop vs pure-numpy path.

Also times a full 10K x 3072-dim top-10 search against the 50 ms target.
Run: python3 benchmarks/bench_scan.py
"""

import time

import numpy as np

from provsearch import kernels
from provsearch.embedding import l2_normalize
from provsearch.index import FlatIndex


def bench(fn, matrix, query, repeats=20):
    fn(matrix, query)  # warmup / JIT compile
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn(matrix, query)
    return (time.perf_counter() - t0) / repeats


def main():
    rng = np.random.default_rng(7)
    n, d = 10_000, 3072
    matrix = rng.normal(size=(n, d)).astype(np.float32)
    matrix /= np.linalg.norm(matrix, axis=1, keepdims=True)
    query = l2_normalize(rng.normal(size=d)).components

    print(f"scan kernel, {n} x {d} float32 (mean of 20 runs)")
    t_np = bench(kernels.scan_scores_numpy, matrix, query)
    print(f"  numpy  : {t_np * 1e3:8.2f} ms")
    if hasattr(kernels, "scan_scores_numba"):
        t_nb = bench(kernels.scan_scores_numba, matrix, query)
        print(f"  numba  : {t_nb * 1e3:8.2f} ms  ({t_np / t_nb:.2f}x vs numpy)")
    else:
        print("  numba  : unavailable (PROVSEARCH_NO_NUMBA=1 or numba missing)")

    idx = FlatIndex(d)
    for i in range(n):
        idx.add(f"r{i:05d}", matrix[i])
    idx.freeze()
    idx.search(query, 10)  # warmup
    t0 = time.perf_counter()
    for _ in range(20):
        idx.search(query, 10)
    per_search = (time.perf_counter() - t0) / 20
    status = "OK" if per_search < 0.050 else "over target"
    print(f"full top-10 search ({kernels.BACKEND} backend): {per_search * 1e3:.2f} ms  [{status}, target < 50 ms]")


if __name__ == "__main__":
    main()
