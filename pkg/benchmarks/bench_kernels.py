"""Benchmark the compiled term kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Times the raw kernel functions on random term dictionaries and one
higher-level pipeline (rank-one factorization) under each backend.
Coefficients are exact rationals either way, so the compiled kernels only
remove interpreter loop overhead; expect a modest, not dramatic, speedup.
"""

import argparse
import os
import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from higgspec import _core_py  # noqa: E402
from higgspec import _kernels  # noqa: E402

try:
    from higgspec import _core
except ImportError:
    _core = None


def rand_terms(rng, nvars, nterms, max_exp=4):
    out = {}
    while len(out) < nterms:
        e = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        out[e] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 6))
    return out


def bench(fn, args_list, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_rows(rng, repeat):
    pairs3 = [(rand_terms(rng, 3, 20), rand_terms(rng, 3, 20)) for _ in range(200)]
    pairs_mul = [(rand_terms(rng, 3, 12), rand_terms(rng, 3, 12)) for _ in range(60)]
    submul = [
        (rand_terms(rng, 3, 25), Fraction(3, 2), (1, 0, 2), rand_terms(rng, 3, 12))
        for _ in range(200)
    ]
    evals = [
        (rand_terms(rng, 3, 25), (Fraction(2, 3), Fraction(-1, 2), Fraction(5)))
        for _ in range(200)
    ]
    return [
        ("add_terms", pairs3),
        ("sub_terms", pairs3),
        ("mul_terms", pairs_mul),
        ("submul_terms", submul),
        ("eval_terms", evals),
    ]


def pipeline_case(rng):
    from higgspec.poly import Poly
    from higgspec.spectral import OneForm, RankOneFactorization

    nvars = 3
    xs = [Poly.variable(nvars, i) for i in range(nvars)]
    alpha = OneForm((xs[0] + 1, xs[1] * 2 + xs[2], Poly.one(nvars)))
    tau = (xs[0] + xs[1] + 3) * (xs[2] + 2)
    return RankOneFactorization(alpha, tau).symdiff()


def bench_pipeline(backend, cases, repeat):
    from higgspec.spectral import factor_rank_one

    _kernels.select_backend(backend)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for S in cases:
            factor_rank_one(S)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if _core is None:
        print("compiled kernels are not built (run: python setup.py build_ext --inplace)")
        print("timing the pure-Python backend only\n")

    rng = random.Random(args.seed)
    rows = kernel_rows(rng, args.repeat)
    print(f"{'kernel':14s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, payload in rows:
        t_py = bench(getattr(_core_py, name), payload, args.repeat)
        if _core is not None:
            t_cy = bench(getattr(_core, name), payload, args.repeat)
            print(f"{name:14s} {t_py * 1e3:9.2f}ms {t_cy * 1e3:9.2f}ms {t_py / t_cy:7.2f}x")
        else:
            print(f"{name:14s} {t_py * 1e3:9.2f}ms {'-':>10s} {'-':>8s}")

    rng2 = random.Random(args.seed + 1)
    cases = [pipeline_case(rng2) for _ in range(40)]
    t_py = bench_pipeline("python", cases, args.repeat)
    line = f"{'factorization':14s} {t_py * 1e3:9.2f}ms"
    if _core is not None:
        t_cy = bench_pipeline("cython", cases, args.repeat)
        line += f" {t_cy * 1e3:9.2f}ms {t_py / t_cy:7.2f}x"
    print(line)
    _kernels.select_backend("cython" if _core is not None else "python")


if __name__ == "__main__":
    main()
