"""Exact deviation identities, angle sandwich, trace inequality."""

from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pinvperturb.geometry import (
    aligning_unitaries,
    angle_bounds,
    cross_term_blocks,
    deviation_fro,
    deviation_spectral,
    deviation_sq,
    energy_terms_a,
    energy_terms_b,
    equal_rank_angle_gap,
    identity_terms_a,
    identity_terms_b,
    make_pair,
    proof_identity_u,
    proof_identity_v,
    subspace_angles,
    swap_pair,
    trace_real,
    von_neumann_sum,
)
from pinvperturb.core import ShapeError


def _lowrank(rng, m, n, r, cplx):
    if r == 0:
        return np.zeros((m, n), dtype=complex)
    x = rng.standard_normal((m, r))
    y = rng.standard_normal((n, r))
    if cplx:
        x = x + 1j * rng.standard_normal((m, r))
        y = y + 1j * rng.standard_normal((n, r))
    return x @ y.conj().T


def _all_pairs():
    rng = np.random.default_rng(29)
    for m, n in [(2, 2), (3, 2), (2, 3), (4, 4), (5, 3), (6, 6)]:
        for ra in range(min(m, n) + 1):
            for rb in range(min(m, n) + 1):
                for cplx in (False, True):
                    yield make_pair(
                        _lowrank(rng, m, n, ra, cplx), _lowrank(rng, m, n, rb, cplx)
                    )


def test_make_pair_shape_check():
    with pytest.raises(ShapeError):
        make_pair(np.eye(2), np.eye(3))


def test_identity_sums_equal_deviation():
    for p in _all_pairs():
        dev = deviation_sq(p)
        assert sum(identity_terms_a(p)) == pytest.approx(dev, abs=1e-9 * (1 + dev))
        assert sum(identity_terms_b(p)) == pytest.approx(dev, abs=1e-9 * (1 + dev))


def test_cross_term_block_forms_agree():
    for p in _all_pairs():
        x_alt, y_alt = cross_term_blocks(p)
        assert x_alt == pytest.approx(p.norms.x, abs=1e-9 * (1 + p.norms.x))
        assert y_alt == pytest.approx(p.norms.y, abs=1e-9 * (1 + p.norms.y))


def test_proof_identities_both_orientations():
    for p in _all_pairs():
        for q in (p, swap_pair(p)):
            lhs, rhs = proof_identity_u(q)
            assert lhs == pytest.approx(rhs, abs=1e-9 * (1 + lhs + q.norms.eb))
            lhs, rhs = proof_identity_v(q)
            assert lhs == pytest.approx(rhs, abs=1e-9 * (1 + lhs + q.norms.ae))


def test_energy_splits_equal_perturbation_energy():
    for p in _all_pairs():
        e2 = p.norms.e2
        assert sum(energy_terms_a(p)) == pytest.approx(e2, abs=1e-9 * (1 + e2))
        assert sum(energy_terms_b(p)) == pytest.approx(e2, abs=1e-9 * (1 + e2))


def test_equal_rank_cross_masses_match():
    rng = np.random.default_rng(31)
    for m, n, r in [(3, 3, 2), (4, 3, 3), (3, 4, 1), (5, 5, 5)]:
        p = make_pair(_lowrank(rng, m, n, r, True), _lowrank(rng, m, n, r, True))
        assert p.rank_a == p.rank_b == r
        assert equal_rank_angle_gap(p) <= 1e-9


def test_angle_sandwich():
    for p in _all_pairs():
        dev = deviation_sq(p)
        ab = angle_bounds(p)
        slack = 1e-9 * (1 + dev)
        assert dev <= ab.upper_a + slack
        assert dev <= ab.upper_b + slack
        assert ab.lower_a <= dev + slack
        assert ab.lower_b <= dev + slack


def test_known_split_for_diagonal_jump_case():
    # a = diag(1, 0) against b = diag(1/(1+2t), t) at t = 0.2:
    # route a splits as (1/t^2, 0, 4 t^2), route b as (0, 1/t^2, 4 t^2)
    t = 0.2
    p = make_pair(np.diag([1.0, 0.0]), np.diag([1.0 / (1.0 + 2.0 * t), t]))
    assert deviation_sq(p) == pytest.approx(4 * t**2 + 1 / t**2, rel=1e-12)
    t1, t2, x = identity_terms_a(p)
    assert (t1, t2, x) == pytest.approx((25.0, 0.0, 0.16), abs=1e-12)
    t1, t2, y = identity_terms_b(p)
    assert (t1, t2, y) == pytest.approx((0.0, 25.0, 0.16), abs=1e-12)
    ang = subspace_angles(p)
    assert ang.u12 == pytest.approx(1.0, abs=1e-12)
    assert ang.v21 == pytest.approx(0.0, abs=1e-12)


def test_deviation_norm_variants_consistent():
    rng = np.random.default_rng(37)
    p = make_pair(_lowrank(rng, 5, 4, 3, True), _lowrank(rng, 5, 4, 2, True))
    assert deviation_fro(p) ** 2 == pytest.approx(deviation_sq(p), rel=1e-12)
    assert deviation_spectral(p) <= deviation_fro(p) + 1e-12


def test_trace_real_basics():
    a = np.array([[1.0 + 1.0j, 0.0], [0.0, 2.0]])
    b = np.array([[1.0, 0.0], [0.0, 1.0 - 1.0j]])
    # Re tr(a b*) = Re((1+1j) + 2(1+1j)) = 3
    assert trace_real(a, b) == pytest.approx(3.0)
    with pytest.raises(ShapeError):
        trace_real(np.eye(2), np.eye(3))


def test_von_neumann_bound_and_attainment():
    rng = np.random.default_rng(41)
    for t in range(40):
        m = int(rng.integers(1, 6))
        n = int(rng.integers(1, 6))
        mm = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        nn = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        vn = von_neumann_sum(mm, nn)
        qm = np.linalg.qr(rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m)))[0]
        qn = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))[0]
        assert trace_real(qm @ mm @ qn, nn) <= vn + 1e-9 * (1 + vn)
        u, v = aligning_unitaries(mm, nn)
        assert_allclose(u.conj().T @ u, np.eye(m), atol=1e-12)
        assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-12)
        assert trace_real(u @ mm @ v, nn) == pytest.approx(vn, abs=1e-9 * (1 + vn))


def test_von_neumann_diagonal_case():
    # diagonal matrices with decreasing entries align with the identity
    mm = np.diag([3.0, 1.0])
    nn = np.diag([2.0, 0.5])
    assert von_neumann_sum(mm, nn) == pytest.approx(6.5)
    assert trace_real(mm, nn) == pytest.approx(6.5)


def test_swap_pair_flips_roles():
    rng = np.random.default_rng(43)
    p = make_pair(_lowrank(rng, 4, 3, 2, True), _lowrank(rng, 4, 3, 3, True))
    q = swap_pair(p)
    assert q.rank_a == p.rank_b
    assert_allclose(q.e, -p.e, atol=0.0)
    assert deviation_sq(q) == pytest.approx(deviation_sq(p), rel=1e-12)
    assert q.norms.x == pytest.approx(p.norms.y, rel=1e-12)
