import numpy as np
import pytest

from chebrank import (
    DegenerateSystem,
    alternating_minimize,
    alternating_runs,
    fixed_factor_solve,
    max_abs_norm,
    minimize_from_seed,
    verify_local_optimality,
)
from chebrank.seeding import hash64


def _rank_r_matrix(seed, m, n, r):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((m, r)) @ rng.standard_normal((n, r)).T


def test_exact_rank_recovery():
    a = _rank_r_matrix(71, 8, 8, 2)
    res = alternating_minimize(a, 2, inits=3, seed=0)
    assert res.error <= 1e-8


def test_identity_rank_one():
    res = alternating_minimize(np.eye(8), 1, inits=5, seed=0)
    assert res.error <= 0.5 + 1e-6


def test_zero_matrix():
    res = alternating_minimize(np.zeros((6, 5)), 2, inits=1, seed=0)
    assert res.error == 0.0
    assert np.all(res.U == 0.0)
    assert res.history == [0.0]
    assert res.termination == "converged"


def test_error_matches_norm_and_history_monotone():
    rng = np.random.default_rng(73)
    for seed in range(4):
        a = rng.standard_normal((10, 9))
        res = alternating_minimize(a, 2, inits=2, seed=seed)
        assert abs(res.error - max_abs_norm(a - res.U @ res.V.T)) <= 1e-12
        hist = res.history
        assert all(nxt <= prev + 1e-12 * max(1.0, prev) for prev, nxt in zip(hist, hist[1:]))
        assert res.error == hist[-1]


def test_more_inits_never_worse():
    a = np.random.default_rng(79).standard_normal((9, 9))
    errors = [alternating_minimize(a, 2, inits=k, seed=5).error for k in (1, 2, 3, 4)]
    assert all(b <= a_ + 1e-15 for a_, b in zip(errors, errors[1:]))


def test_per_init_seeding_is_published_scheme():
    a = _rank_r_matrix(83, 7, 7, 1)
    runs = alternating_runs(a, 1, inits=3, seed=9)
    assert [r.init_seed for r in runs] == [hash64(9, i) for i in range(3)]
    redo = minimize_from_seed(a, 1, hash64(9, 1))
    assert redo.error == runs[1].error
    assert np.array_equal(redo.U, runs[1].U)


def test_transpose_mirror_trajectory():
    # the U-sweep on A is the V-sweep of the transposed problem, so the
    # mirrored run on A^T reproduces the same half-sweep errors exactly
    rng = np.random.default_rng(89)
    a = rng.standard_normal((8, 8))
    v0 = np.random.default_rng(hash64(17, 0)).standard_normal((8, 2))
    direct = []
    factor = v0
    for _ in range(3):
        res_u = fixed_factor_solve(a, factor)
        direct.append(res_u.mu)
        res_v = fixed_factor_solve(np.ascontiguousarray(a.T), res_u.U)
        direct.append(res_v.mu)
        factor = res_v.U
    b = np.ascontiguousarray(a.T)
    mirrored = []
    factor = v0
    for _ in range(3):
        res_u = fixed_factor_solve(np.ascontiguousarray(b.T), factor)
        mirrored.append(res_u.mu)
        res_v = fixed_factor_solve(b, res_u.U)
        mirrored.append(res_v.mu)
        factor = res_v.U
    assert direct == mirrored


def test_validation_errors():
    with pytest.raises(ValueError):
        alternating_minimize(np.eye(4), 0, inits=1)
    with pytest.raises(ValueError):
        alternating_minimize(np.eye(4), 4, inits=1)
    with pytest.raises(ValueError):
        alternating_minimize(np.eye(4), 1, inits=0)


def test_degenerate_inits_redraw_and_report():
    # all-ones data: a mixed-sign init makes every row optimum exactly 0,
    # collapsing the factor (degenerate); a same-sign init recovers exactly
    a = np.ones((5, 4))
    with pytest.raises(DegenerateSystem, match="row"):
        alternating_minimize(a, 1, inits=1, seed=3)
    runs = alternating_runs(a, 1, inits=5, seed=3)
    assert {"degenerate", "converged"} == {r.termination for r in runs}
    degenerate = [r for r in runs if r.termination == "degenerate"]
    assert all(np.isinf(r.error) and r.detail for r in degenerate)
    best = alternating_minimize(a, 1, inits=5, seed=3)
    assert best.error == 0.0


def test_verify_local_optimality_on_converged():
    rng = np.random.default_rng(97)
    a = rng.standard_normal((10, 10))
    res = alternating_minimize(a, 2, inits=3, seed=1)
    report = verify_local_optimality(a, res.U, res.V)
    assert report.locally_optimal_hint
    assert report.max_residual == pytest.approx(res.error, abs=1e-12)
    checked = [c for c in report.per_row + report.per_col if c.alternance is not None]
    assert checked, "expected at least one certified row or column"


def test_verify_local_optimality_zero_residual():
    a = _rank_r_matrix(101, 6, 5, 2)
    rng = np.random.default_rng(101)
    u = rng.standard_normal((6, 2))
    v = rng.standard_normal((5, 2))
    report = verify_local_optimality(u @ v.T, u, v)
    assert report.locally_optimal_hint
    assert report.max_residual == 0.0
    assert report.per_row == [] and report.per_col == []


def test_verify_local_optimality_perturbed():
    rng = np.random.default_rng(103)
    a = rng.standard_normal((10, 10))
    res = alternating_minimize(a, 2, inits=3, seed=2)
    u = res.U.copy()
    u[0, 0] += 0.1
    report = verify_local_optimality(a, u, res.V)
    broken = any(
        c.count != res.U.shape[1] + 1 or c.alternance is False
        for c in report.per_row + report.per_col
    )
    assert broken


def test_verify_shapes():
    with pytest.raises(ValueError):
        verify_local_optimality(np.eye(4), np.ones((4, 2)), np.ones((3, 2)))
