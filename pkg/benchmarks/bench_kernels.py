"""Compare the compiled scoring kernels against the numpy fallback.

Times each kernel on posterior-sample matrices shaped like real workloads
(the simulation harness scores 2000x2 blocks per trial; the bundled
comparison scores 100000x4 blocks). Reports best-of-N microseconds per call
and the speedup. Run from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --rows 100000 --criteria 4 --repeat 30
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from brisklab._kernels import _numpy as numpy_backend

try:
    from brisklab._kernels import _cyscore as cython_backend
except ImportError:
    cython_backend = None


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def make_cases(rows: int, criteria: int, seed: int):
    rng = np.random.default_rng(seed)
    u = rng.uniform(0.0, 1.0, (rows, criteria))
    u[rng.uniform(size=rows) < 0.01] = 0.0  # annihilation path stays exercised
    v = rng.uniform(0.0, 1.0, (rows, criteria))
    w = np.full(criteria, 1.0 / criteria)
    w_ml = np.full(criteria, max(0.0, 1.0 / criteria - 0.05))
    c = 0.2
    return [
        ("linear_scores", lambda b: b.linear_scores(u, w)),
        ("product_scores", lambda b: b.product_scores(u, w)),
        ("multilinear_scores", lambda b: b.multilinear_scores(u, w_ml, c)),
        ("slos_scores", lambda b: b.slos_scores(u, w)),
        ("count_wins", lambda b: b.count_wins(b.linear_scores(u, w), b.linear_scores(v, w), False)),
        ("paired_win_counts", lambda b: b.paired_win_counts(u, v, w, w, w_ml, c, w)),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=2000, help="posterior draws per matrix")
    parser.add_argument("--criteria", type=int, default=4)
    parser.add_argument("--repeat", type=int, default=200, help="timing repetitions (best-of)")
    parser.add_argument("--seed", type=int, default=2026)
    args = parser.parse_args()

    cases = make_cases(args.rows, args.criteria, args.seed)
    print(f"{args.rows} rows x {args.criteria} criteria, best of {args.repeat}")
    if cython_backend is None:
        print("compiled extension not importable; timing the numpy backend only")

    header = f"{'kernel':22s} {'numpy':>12s}"
    if cython_backend is not None:
        header += f" {'cython':>12s} {'speedup':>8s}"
    print(header)
    for name, call in cases:
        t_np = best_of(lambda: call(numpy_backend), args.repeat)
        line = f"{name:22s} {1e6 * t_np:10.1f}us"
        if cython_backend is not None:
            t_cy = best_of(lambda: call(cython_backend), args.repeat)
            line += f" {1e6 * t_cy:10.1f}us {t_np / t_cy:7.2f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
