#!/usr/bin/env python3
"""Time the compiled kernels against the pure-numpy fallback.

Runs the three hot kernels (pairwise squared-L2, cross squared-L2,
below-count with tie halves) at a few problem sizes and prints the
best-of-5 wall time for each backend plus the speedup. Usage:

    python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from fnclass import _kernels_py as kpy

try:
    from fnclass import _ckernels as kc
except ImportError:
    kc = None


def best_of(fn, args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    rng = np.random.default_rng(12345)
    for n, m in ((50, 101), (200, 101), (400, 401)):
        values = np.ascontiguousarray(rng.normal(size=(n, m)))
        other = np.ascontiguousarray(rng.normal(size=(n // 2, m)))
        weights = np.ascontiguousarray(np.full(m, 1.0 / m))
        yield (f"sq_l2_matrix  n={n:<4} m={m}", "sq_l2_matrix",
               (values, weights))
        yield (f"sq_l2_cross   n={n:<4} m={m}", "sq_l2_cross",
               (values, other, weights))
    for n in (1_000, 20_000, 200_000):
        a = np.ascontiguousarray(rng.integers(0, n // 2, size=n).astype(float))
        b = np.ascontiguousarray(rng.integers(0, n // 2, size=n).astype(float))
        yield (f"count_below   n={n}", "count_below", (a, b))


def main() -> int:
    if kc is None:
        print("compiled kernels not built; showing pure-numpy timings only")
    header = f"{'case':<28} {'numpy':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, name, args in cases():
        t_py = best_of(getattr(kpy, name), args)
        if kc is not None:
            t_c = best_of(getattr(kc, name), args)
            ratio = t_py / t_c if t_c > 0 else float("inf")
            print(f"{label:<28} {t_py * 1e3:>8.3f}ms {t_c * 1e3:>8.3f}ms "
                  f"{ratio:>7.1f}x")
        else:
            print(f"{label:<28} {t_py * 1e3:>8.3f}ms {'-':>10} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
