#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-Python fallback.

Times full eigenvalue and singular-value solves on seeded random matrices
for each available backend and prints a speedup table.

    python benchmarks/bench_kernels.py --sizes 100,200,400 --repeats 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from markovspectra import kernels, linalg
from markovspectra.checks import fuzz_matrix
from markovspectra.rng import SeededStream


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100,200,400", help="comma-separated matrix orders")
    parser.add_argument("--repeats", type=int, default=3, help="best-of repeats per cell")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("note: compiled backend unavailable; timing the fallback only")

    header = f"{'kernel':<14}{'n':>6}" + "".join(f"{name:>14}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        a = fuzz_matrix(SeededStream(args.seed), n, n)
        for kernel_name, op in (("eigenvalues", linalg.eigenvalues),
                                ("singular_values", linalg.singular_values)):
            times = {}
            for backend_name in backends:
                with kernels.use_backend(backend_name):
                    times[backend_name] = _time(lambda: op(a), args.repeats)
            row = f"{kernel_name:<14}{n:>6}" + "".join(
                f"{times[name] * 1e3:>12.1f}ms" for name in backends
            )
            if len(backends) == 2:
                row += f"{times['python'] / times['compiled']:>9.1f}x"
            print(row)
    # agreement spot check at the largest size
    n = sizes[-1]
    a = fuzz_matrix(SeededStream(args.seed), n, n)
    results = {}
    for backend_name in backends:
        with kernels.use_backend(backend_name):
            results[backend_name] = np.sort(np.abs(np.array(linalg.eigenvalues(a))))
    if len(backends) == 2:
        gap = float(np.max(np.abs(results["compiled"] - results["python"])))
        print(f"\nbackend agreement on |eigenvalues| at n={n}: max gap {gap:.3e}")


if __name__ == "__main__":
    main()
