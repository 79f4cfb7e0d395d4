#!/usr/bin/env python3
"""Compare the compiled kernel backend against the pure numpy fallback.

Run from the repository root after building the extension:

    python3 benchmarks/bench_kernels.py

The matrix kernels only win below the BLAS-dispatch crossover (the compiled
backend delegates past it, so large sizes tie); the RNG word stream wins at
every size.
"""

import timeit

import numpy as np

from krein.kernels import _pure

try:
    from krein.kernels import _speedups
except ImportError:
    _speedups = None


def _time(fn, reps):
    return timeit.timeit(fn, number=reps) / reps * 1e6


def _problem(n, m, seed=0):
    rng = np.random.default_rng(seed)
    f = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return f, (g + g.conj().T) / 2.0


def bench_pairwise():
    print("pairwise_form (n-dim space, n family members), time per call:")
    print(f"  {'n':>4} {'compiled_us':>12} {'pure_us':>10} {'speedup':>8}")
    for n in (2, 4, 6, 8, 12, 16, 32, 64):
        f, g = _problem(n, n)
        reps = 5000 if n <= 16 else 500
        fast = _time(lambda: _speedups.pairwise_form(f, g), reps)
        pure = _time(lambda: _pure.pairwise_form(f, g), reps)
        print(f"  {n:>4} {fast:>12.2f} {pure:>10.2f} {pure / fast:>8.2f}")


def bench_analysis():
    print("batch_analysis (single sample, the common inner-loop shape):")
    print(f"  {'n':>4} {'compiled_us':>12} {'pure_us':>10} {'speedup':>8}")
    for n in (2, 4, 6, 8, 12, 16, 32):
        f, g = _problem(n, n)
        x = _problem(n, 1, seed=1)[0]
        reps = 5000
        fast = _time(lambda: _speedups.batch_analysis(f, g, x), reps)
        pure = _time(lambda: _pure.batch_analysis(f, g, x), reps)
        print(f"  {n:>4} {fast:>12.2f} {pure:>10.2f} {pure / fast:>8.2f}")


def bench_words():
    print("splitmix64_words, time per call:")
    print(f"  {'count':>8} {'compiled_us':>12} {'pure_us':>10} {'speedup':>8}")
    for count in (64, 1024, 65536, 1 << 20):
        reps = 2000 if count <= 65536 else 50
        fast = _time(lambda: _speedups.splitmix64_words(42, 0, count), reps)
        pure = _time(lambda: _pure.splitmix64_words(42, 0, count), reps)
        print(f"  {count:>8} {fast:>12.2f} {pure:>10.2f} {pure / fast:>8.2f}")


def main():
    if _speedups is None:
        print("compiled backend not available; nothing to compare")
        return 1
    bench_words()
    print()
    bench_pairwise()
    print()
    bench_analysis()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
