"""Timing comparison of the SVD kernel backends.

Runs the one-sided orthogonalization through every available backend and
through numpy's LAPACK driver on the same matrices, reporting per-call time
and the largest deviation of the computed singular values from numpy's.

Usage:
    python3 benchmarks/bench_jacobi.py --sizes 16 32 64 --repeats 5
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from pinvperturb.backends import available_backends
from pinvperturb.core import jacobi_svd


def _sample(rng, n, field):
    a = rng.standard_normal((n, n))
    if field == "complex":
        a = a + 1j * rng.standard_normal((n, n))
    return a


def bench_one(a, backend, repeats):
    u, s, v = jacobi_svd(a, backend=backend)
    ref = np.linalg.svd(a, compute_uv=False)
    err = float(np.abs(s - ref).max()) / (1.0 + float(ref[0]))
    best = min(
        timeit.repeat(lambda: jacobi_svd(a, backend=backend), number=1, repeat=repeats)
    )
    return best, err


def bench_numpy(a, repeats):
    best = min(timeit.repeat(lambda: np.linalg.svd(a), number=1, repeat=repeats))
    return best, 0.0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--field", choices=("real", "complex"), default="complex")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    backends = available_backends()
    print(f"backends: {', '.join(backends)}  (field={args.field}, repeats={args.repeats})")
    header = f"{'n':>5}  {'backend':<10} {'per call':>12}  {'vs numpy sigma':>14}"
    print(header)
    print("-" * len(header))
    for n in args.sizes:
        a = _sample(rng, n, args.field)
        rows = [(b, *bench_one(a, b, args.repeats)) for b in backends]
        rows.append(("numpy", *bench_numpy(a, args.repeats)))
        for name, t, err in rows:
            print(f"{n:>5}  {name:<10} {t * 1e3:>10.3f}ms  {err:>14.2e}")
        if len(backends) == 2:
            t_py = next(t for b, t, _ in rows if b == "python")
            t_cy = next(t for b, t, _ in rows if b == "compiled")
            print(f"{'':>5}  speedup compiled/python: {t_py / t_cy:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
