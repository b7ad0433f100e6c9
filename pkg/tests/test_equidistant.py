import numpy as np
import pytest

from chebrank import (
    DegenerateSystem,
    equidistant_by_determinants,
    equidistant_by_signs,
    grid_min,
)

BOTH_PATHS = [equidistant_by_determinants, equidistant_by_signs]


@pytest.mark.parametrize("solve", BOTH_PATHS)
def test_two_point_midpoint(solve):
    sol = solve([[1.0], [1.0]], [0.0, 2.0])
    assert sol.u == pytest.approx([1.0], abs=1e-14)
    assert sol.rho == pytest.approx(1.0, abs=1e-14)
    assert np.array_equal(sol.signs, [-1.0, 1.0])


@pytest.mark.parametrize("solve", BOTH_PATHS)
def test_three_row_worked_example(solve):
    sol = solve([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]], [0.0, 0.0, 1.0])
    assert sol.u == pytest.approx([1 / 3, 1 / 3], abs=1e-12)
    assert sol.rho == pytest.approx(1 / 3, abs=1e-12)
    # every residual attains the common deviation
    resid = np.array([0.0, 0.0, 1.0]) - np.array([[1.0, 0], [0, 1], [1, 1]]) @ sol.u
    assert np.max(np.abs(np.abs(resid) - sol.rho)) <= 1e-12


def test_three_row_cofactors():
    sol = equidistant_by_determinants([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]], [0.0, 0.0, 1.0])
    assert np.allclose(sol.cofactors, [-1.0, 1.0, 1.0], atol=1e-14)


def test_paths_agree_on_worked_example():
    v = [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
    a = [0.0, 0.0, 1.0]
    det_sol = equidistant_by_determinants(v, a)
    sign_sol = equidistant_by_signs(v, a)
    assert np.max(np.abs(det_sol.u - sign_sol.u)) <= 1e-10
    assert abs(det_sol.rho - sign_sol.rho) <= 1e-10


@pytest.mark.parametrize("solve", BOTH_PATHS)
def test_consistent_system(solve):
    sol = solve([[1.0], [1.0]], [3.0, 3.0])
    assert sol.u == pytest.approx([3.0], abs=1e-14)
    assert sol.rho == 0.0


def test_symmetric_one_column():
    sol = equidistant_by_signs([[1.0], [-1.0]], [1.0, 1.0])
    assert sol.u == pytest.approx([0.0], abs=1e-14)
    assert sol.rho == pytest.approx(1.0, abs=1e-14)
    assert np.array_equal(sol.signs, [1.0, 1.0])


def _random_system(seed, r):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((r + 1, r)), rng.standard_normal(r + 1)


def test_cross_path_agreement_randomized():
    for i in range(60):
        r = 1 + i % 4
        v, a = _random_system(3000 + i, r)
        det_sol = equidistant_by_determinants(v, a)
        sign_sol = equidistant_by_signs(v, a)
        assert abs(det_sol.rho - sign_sol.rho) <= 1e-9 * (1.0 + det_sol.rho)
        resid_det = a - v @ det_sol.u
        resid_sign = a - v @ sign_sol.u
        assert np.max(np.abs(resid_det - resid_sign)) <= 1e-8


def test_residuals_equal_deviation_and_signs():
    for i in range(40):
        r = 1 + i % 4
        v, a = _random_system(4000 + i, r)
        for solve in BOTH_PATHS:
            sol = solve(v, a)
            resid = a - v @ sol.u
            assert np.max(np.abs(np.abs(resid) - sol.rho)) <= 1e-9 * (1.0 + sol.rho)
            if sol.rho > 0:
                assert np.array_equal(np.where(resid < 0, -1.0, 1.0), sol.signs)


def test_alternating_cofactor_signs():
    # residual times delete-one-row determinant alternates strictly
    for i in range(60):
        r = 1 + i % 4
        v, a = _random_system(5000 + i, r)
        sol = equidistant_by_determinants(v, a)
        assert sol.rho > 0
        seq = (a - v @ sol.u) * sol.cofactors
        assert np.all(seq[:-1] * seq[1:] < 0)


def test_delete_one_row_residual_identity():
    # residual of the j-th deleted-row solution on row j, in closed form
    for i in range(30):
        r = 1 + i % 4
        v, a = _random_system(6000 + i, r)
        sol = equidistant_by_determinants(v, a)
        d = sol.cofactors
        k = np.arange(r + 1)
        s = -np.sum((-1.0) ** k * a * d)
        for j in range(r + 1):
            if d[j] == 0.0:
                continue
            rows = k != j
            uj = np.linalg.solve(v[rows], a[rows])
            lhs = v[j] @ uj - a[j]
            expected = (-1.0) ** j / d[j] * s
            assert lhs == pytest.approx(expected, rel=1e-8)


def test_matches_grid_oracle_blind_search_r1():
    # 1-D refinement reliably localizes the convex minimum from a cold box
    for i in range(15):
        v, a = _random_system(7000 + 2 * i, 1)
        sol = equidistant_by_signs(v, a)
        reference = grid_min(v, a, box_halfwidth=max(8.0, 2 * np.max(np.abs(sol.u))), levels=8)
        assert sol.rho == pytest.approx(reference, abs=1e-6)


def test_matches_grid_oracle_probe_small_r():
    # recenter the problem on the claimed optimum: by convexity the grid
    # finds any improvement near the center, so agreement certifies rho
    for i in range(20):
        r = 1 + i % 2
        v, a = _random_system(7000 + i, r)
        sol = equidistant_by_signs(v, a)
        shifted = a - v @ sol.u
        assert grid_min(v, shifted, box_halfwidth=4.0, levels=8) == pytest.approx(
            sol.rho, abs=1e-6
        )


def test_degenerate_all_cofactors_zero():
    v = [[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]]
    a = [0.0, 1.0, 2.0]
    with pytest.raises(DegenerateSystem):
        equidistant_by_determinants(v, a)
    with pytest.raises(DegenerateSystem):
        equidistant_by_signs(v, a)


def test_sign_path_rejects_non_chebyshev():
    # rows 0 and 2 proportional: nullspace vector has a zero component
    v = [[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]]
    a = [0.0, 0.0, 1.0]
    with pytest.raises(DegenerateSystem):
        equidistant_by_signs(v, a)


def test_shape_validation():
    with pytest.raises(ValueError):
        equidistant_by_signs(np.ones((3, 1)), np.ones(3))
    with pytest.raises(ValueError):
        equidistant_by_determinants(np.ones((3, 2)), np.ones(4))
