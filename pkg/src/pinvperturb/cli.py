"""Command line interface.

Subcommands:
  pinv                pseudoinverse of a matrix file, with rank and norms
  bounds              full estimator report for a pair of matrix files
  verify-identities   exact-identity residuals for a pair
  suite               randomized property suite
  sweep               closed-form parameter sweep (cases 1 and 2)

Exit codes: 0 success, 2 usage or input error, 3 numerical invariant
violation.  All numbers print with 17 significant digits.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .backends import available_backends, default_backend
from .bounds import envelope_ok, full_report, norm_bounds_ok, report_csv, report_table
from .core import ShapeError, pinv, svd_factors
from .geometry import make_pair
from .matrixio import MatrixFormatError, dumps, load
from .suite import DEFAULT_SEED, DEFAULT_TRIALS, identity_checks, run_property_suite
from .sweeps import (
    DEFAULT_STEPS,
    DEFAULT_TAU_MAX,
    DEFAULT_TAU_MIN,
    SweepSpec,
    sweep_csv,
    sweep_example,
)


def _fmt(x):
    return f"{x:.17g}"


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_pinv(args):
    a, _field = load(args.matrix)
    f = svd_factors(a, tol=args.tol)
    x = pinv(f)
    comments = [
        f"rank {f.rank}",
        "sigma " + " ".join(_fmt(s) for s in f.sigma),
        f"pinv_spectral_norm {_fmt(f.pinv_norm2)}",
    ]
    text = dumps(x, comments=comments)
    _emit(text, args.out)
    if args.out:
        for c in comments:
            print(c)
    return 0


def cmd_bounds(args):
    a, _ = load(args.a)
    b, _ = load(args.b)
    p = make_pair(a, b, tol=args.tol)
    rep = full_report(p)
    text = report_csv(rep) if args.format == "csv" else report_table(rep)
    _emit(text, args.out)
    if not (envelope_ok(rep) and norm_bounds_ok(rep)):
        print(
            "error: bound envelope does not bracket the exact deviation",
            file=sys.stderr,
        )
        return 3
    return 0


def cmd_verify_identities(args):
    a, _ = load(args.a)
    b, _ = load(args.b)
    p = make_pair(a, b, tol=args.tol)
    bad = 0
    for name, resid, tol in identity_checks(p):
        ok = resid <= tol
        status = "ok" if ok else "VIOLATION"
        print(f"{status} {name} residual={_fmt(resid)} tol={_fmt(tol)}")
        bad += 0 if ok else 1
    if bad:
        print(f"error: {bad} identity check(s) violated", file=sys.stderr)
        return 3
    return 0


def cmd_suite(args):
    res = run_property_suite(trials=args.trials, seed=args.seed)
    for line in res.format_lines():
        print(line)
    n = len(res.results)
    good = sum(1 for r in res.results if r.passed)
    print(f"{good}/{n} properties passed (backend={default_backend()})")
    if not res.passed:
        print("error: property suite failed", file=sys.stderr)
        return 3
    return 0


def cmd_sweep(args):
    spec = SweepSpec(
        example=args.example,
        tau_min=args.tau_min,
        tau_max=args.tau_max,
        steps=args.steps,
    )
    res = sweep_example(spec)
    _emit(sweep_csv(res), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pinvperturb",
        description=(
            "Moore-Penrose inverses via one-sided Jacobi SVD, and the family "
            "of perturbation bounds on the squared Frobenius deviation of "
            "pseudoinverses."
        ),
        epilog=f"kernel backends available: {', '.join(available_backends())}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pinv", help="pseudoinverse of a matrix file")
    p.add_argument("matrix", help="input matrix file")
    p.add_argument("--tol", type=float, default=None, help="absolute rank cutoff")
    p.add_argument("--out", default=None, help="write the result here instead of stdout")
    p.set_defaults(func=cmd_pinv)

    p = sub.add_parser("bounds", help="estimator report for a pair of matrices")
    p.add_argument("a", help="first matrix file")
    p.add_argument("b", help="second matrix file")
    p.add_argument("--tol", type=float, default=None, help="absolute rank cutoff")
    p.add_argument("--format", choices=("csv", "table"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify-identities", help="exact identity residuals for a pair")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--tol", type=float, default=None, help="absolute rank cutoff")
    p.set_defaults(func=cmd_verify_identities)

    p = sub.add_parser("suite", help="randomized property suite")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("sweep", help="closed-form sweep of a worked case")
    p.add_argument("--example", type=int, choices=(1, 2), required=True)
    p.add_argument("--tau-min", type=float, default=DEFAULT_TAU_MIN)
    p.add_argument("--tau-max", type=float, default=DEFAULT_TAU_MAX)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MatrixFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: cannot read {exc.filename}", file=sys.stderr)
        return 2
    except (ShapeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
