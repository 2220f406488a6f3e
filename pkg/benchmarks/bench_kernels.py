"""Compare the compiled kernels against the pure-Python/NumPy fallback.

Runs the two hot kernels (per-row min distance, LCS length) on synthetic
workloads sized like real scoring runs and prints a timing table. The
fallback is loaded explicitly so the comparison works in one process even
when the compiled module is installed.

Usage:
    python benchmarks/bench_kernels.py [--repeats 5] [--seed 0]
"""

import argparse
import importlib
import time

import numpy as np

from sicf import _kernels_py, backend


def load_compiled():
    try:
        return importlib.import_module("sicf._kernels")
    except ImportError:
        return None


def time_call(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_min_dist(module, rng, repeats: int) -> float:
    # 64 dialogue nouns x 48 candidate nouns x 768 dims, 50 dialogues' worth.
    a = np.ascontiguousarray(rng.normal(size=(64, 768)))
    b = np.ascontiguousarray(rng.normal(size=(48, 768)))

    def run():
        for _ in range(50):
            module.min_dist_rows(a, b)

    return time_call(run, repeats=repeats)


def bench_lcs(module, rng, repeats: int) -> float:
    # 200 summary pairs around 120 tokens over a 500-word vocabulary.
    pairs = [
        (
            np.ascontiguousarray(rng.integers(0, 500, size=120), dtype=np.int64),
            np.ascontiguousarray(rng.integers(0, 500, size=110), dtype=np.int64),
        )
        for _ in range(200)
    ]

    def run():
        for x, y in pairs:
            module.lcs_length(x, y)

    return time_call(run, repeats=repeats)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="best-of-N timing")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    compiled = load_compiled()
    rows = []
    for name, bench in (("min_dist_rows", bench_min_dist), ("lcs_length", bench_lcs)):
        rng = np.random.default_rng(args.seed)
        python_time = bench(_kernels_py, rng, args.repeats)
        rng = np.random.default_rng(args.seed)
        compiled_time = bench(compiled, rng, args.repeats) if compiled else float("nan")
        rows.append((name, python_time, compiled_time))

    print(f"active backend: {backend.BACKEND}")
    print(f"{'kernel':<16} {'python (s)':>12} {'compiled (s)':>13} {'speedup':>9}")
    for name, python_time, compiled_time in rows:
        speedup = python_time / compiled_time if compiled_time == compiled_time else float("nan")
        print(f"{name:<16} {python_time:>12.4f} {compiled_time:>13.4f} {speedup:>8.1f}x")
    if compiled is None:
        print("compiled module unavailable; build it with `pip install -e .`")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
