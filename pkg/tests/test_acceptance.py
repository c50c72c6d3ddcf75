"""Acceptance checks, one test per criterion with its stated tolerance and budget.

The randomized criteria share one 500-pair run of the property suite; the
grid criteria share one 401-point sweep per worked case.  Each test prints
a single summary line naming its criterion.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

from pinvperturb.bounds import full_report
from pinvperturb.geometry import make_pair
from pinvperturb.suite import run_property_suite
from pinvperturb.sweeps import SweepSpec, case_matrices, sweep_example

SUITE_TRIALS = 500
VN_TRIALS = 200
SUITE_SEED = 1729
GRID_STEPS = 401


@pytest.fixture(scope="module")
def suite_run():
    t0 = time.perf_counter()
    res = run_property_suite(trials=SUITE_TRIALS, seed=SUITE_SEED, vn_trials=VN_TRIALS)
    return res, time.perf_counter() - t0


@pytest.fixture(scope="module")
def sweep_one():
    t0 = time.perf_counter()
    res = sweep_example(SweepSpec(example=1, steps=GRID_STEPS))
    return res, time.perf_counter() - t0


@pytest.fixture(scope="module")
def sweep_two():
    t0 = time.perf_counter()
    res = sweep_example(SweepSpec(example=2, steps=GRID_STEPS))
    return res, time.perf_counter() - t0


def _prop(suite, name):
    for r in suite.results:
        if r.name == name:
            return r
    raise KeyError(name)


def _line(num, detail):
    print(f"criterion {num}: PASS  {detail}")


def test_criterion_1_rank_drop_exact_values():
    taus = (0.15, 0.2, 0.3, 0.45)
    t0 = time.perf_counter()
    for t in taus:
        rep = full_report(make_pair(*case_matrices(1, t)))
        want = 4.0 * t**2 + 1.0 / t**2
        assert rep.exact_sq == pytest.approx(want, rel=1e-10)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _line(1, f"exact deviation matches 4t^2 + 1/t^2 at {len(taus)} taus in {elapsed:.3f}s")


def test_criterion_2_rank_drop_sweep(sweep_one):
    res, elapsed = sweep_one
    assert res.taus.shape == (GRID_STEPS,)
    names = ("li_refined", "alpha_upper", "beta_upper", "gamma_upper", "delta_upper")
    worst = 0.0
    for name in names:
        diff = float(res.columns[f"{name}_diff"].max())
        assert diff <= 1e-9, f"{name} off by {diff}"
        worst = max(worst, diff)
    assert float(res.columns["exact_diff"].max()) <= 1e-9
    assert elapsed < 5.0
    _line(2, f"{len(names)} upper closed forms on {GRID_STEPS} points, worst {worst:.2e}, {elapsed:.2f}s")


def test_criterion_3_rank_swap_sweep(sweep_two):
    res, elapsed = sweep_two
    names = ("alpha_lower", "gamma_lower", "delta_lower")
    worst = 0.0
    for name in names:
        diff = float(res.columns[f"{name}_diff"].max())
        assert diff <= 1e-9, f"{name} off by {diff}"
        worst = max(worst, diff)
    assert float(res.columns["exact_diff"].max()) <= 1e-9
    assert elapsed < 5.0
    _line(3, f"{len(names)} lower closed forms on {GRID_STEPS} points, worst {worst:.2e}, {elapsed:.2f}s")


def test_criterion_4_sandwich_on_random_corpus(suite_run):
    suite, elapsed = suite_run
    sandwich = _prop(suite, "bound_sandwich")
    domination = _prop(suite, "norm_bound_domination")
    assert sandwich.trials >= SUITE_TRIALS
    assert sandwich.passed, f"worst {sandwich.worst:.3e} seed {sandwich.worst_seed}"
    assert domination.passed, f"worst {domination.worst:.3e} seed {domination.worst_seed}"
    assert sandwich.tol == 1e-8 and domination.tol == 1e-8
    assert elapsed < 30.0
    _line(
        4,
        f"envelope and norm domination on {sandwich.trials} pairs, "
        f"worst {max(sandwich.worst, domination.worst):.2e}, suite {elapsed:.1f}s",
    )


def test_criterion_5_identities_on_random_corpus(suite_run):
    suite, _ = suite_run
    names = (
        "identity_sum_a", "identity_sum_b", "cross_term_blocks",
        "proof_identity_u", "proof_identity_v",
        "energy_split_a", "energy_split_b",
        "equal_rank_angles", "angle_sandwich",
    )
    worst = 0.0
    for name in names:
        r = _prop(suite, name)
        assert r.tol == 1e-9
        assert r.passed, f"{name} worst {r.worst:.3e} seed {r.worst_seed}"
        worst = max(worst, r.worst)
    _line(5, f"{len(names)} identity families within 1e-9, worst {worst:.2e}")


def test_criterion_6_sharpness_orderings(suite_run):
    suite, _ = suite_run
    r = _prop(suite, "bound_orderings")
    assert r.passed, f"worst {r.worst:.3e} seed {r.worst_seed}"
    _line(6, f"pointwise orderings on {r.trials} pairs, worst {r.worst:.2e}")


def test_criterion_7_trace_inequality_and_attainment(suite_run):
    suite, _ = suite_run
    upper = _prop(suite, "von_neumann_upper")
    attain = _prop(suite, "von_neumann_attainment")
    assert upper.trials == VN_TRIALS and attain.trials == VN_TRIALS
    assert upper.tol == 1e-9 and attain.tol == 1e-9
    assert upper.passed, f"worst {upper.worst:.3e}"
    assert attain.passed, f"worst {attain.worst:.3e}"
    _line(
        7,
        f"trace bound and aligned attainment on {VN_TRIALS} pairs, "
        f"worst {max(upper.worst, attain.worst):.2e}",
    )


def test_criterion_8_penrose_equations(suite_run):
    suite, _ = suite_run
    r = _prop(suite, "penrose")
    assert r.tol == 1e-10
    assert r.passed, f"worst {r.worst:.3e} seed {r.worst_seed}"
    _line(8, f"all four equations on {r.trials} factorizations, worst {r.worst:.2e}")


def test_criterion_9_figure_shapes(sweep_one, sweep_two):
    res1, _ = sweep_one
    gap = res1.columns["li_refined"] - res1.columns["exact"]
    assert res1.taus[0] == pytest.approx(0.101)
    assert gap[0] > 90.0
    assert np.all(np.diff(gap) < 0.0)
    assert gap[-1] < 1.0

    res2, _ = sweep_two
    d = res2.columns["gamma_lower"] - res2.columns["delta_lower"]
    assert d[0] > 0.0
    assert d[-1] < 0.0
    flips = np.nonzero(np.sign(d[:-1]) != np.sign(d[1:]))[0]
    assert flips.size >= 1
    cross = float(res2.taus[flips[0]])
    assert 0.101 < cross < 0.49
    _line(
        9,
        f"refined gap {gap[0]:.1f} shrinking to {gap[-1]:.3f}; "
        f"lower-bound crossover near tau {cross:.3f}",
    )
