import numpy as np
import pytest

from chebrank import DegenerateSystem, combinatorial_mu, grid_min, is_chebyshev_system

V3 = np.array([[1.0], [1.0], [1.0]])
A3 = np.array([0.0, 1.0, 2.0])


def test_combinatorial_worked_example():
    mu, subset = combinatorial_mu(V3, A3)
    assert mu == pytest.approx(1.0, abs=1e-14)
    assert subset == (0, 2)


def test_combinatorial_consistent_is_zero():
    rng = np.random.default_rng(43)
    v = rng.standard_normal((7, 2))
    c = rng.standard_normal(2)
    mu, _ = combinatorial_mu(v, v @ c)
    assert mu <= 1e-12


def test_combinatorial_single_subset():
    mu, subset = combinatorial_mu([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]], [0.0, 0.0, 1.0])
    assert mu == pytest.approx(1 / 3, abs=1e-14)
    assert subset == (0, 1, 2)


def test_combinatorial_guard():
    rng = np.random.default_rng(47)
    with pytest.raises(ValueError):
        combinatorial_mu(rng.standard_normal((50, 4)), rng.standard_normal(50))


def test_combinatorial_degenerate():
    v = np.array([[1.0], [1.0], [1.0]]) * 0.0
    with pytest.raises(DegenerateSystem):
        combinatorial_mu(v, A3)


def test_subset_monotone_under_row_deletion():
    rng = np.random.default_rng(53)
    for _ in range(10):
        n, r = 9, 2
        v = rng.standard_normal((n, r))
        a = rng.standard_normal(n)
        mu_full, _ = combinatorial_mu(v, a)
        keep = np.sort(rng.choice(n, size=n - 2, replace=False))
        mu_sub, _ = combinatorial_mu(v[keep], a[keep])
        assert mu_sub <= mu_full + 1e-12


def test_chebyshev_vandermonde():
    x = np.array([0.0, 1.0, 2.0, 3.5, -1.0])
    v = np.column_stack([np.ones_like(x), x, x**2])
    flag, witness = is_chebyshev_system(v)
    assert flag
    assert witness is None


def test_chebyshev_zero_row():
    flag, witness = is_chebyshev_system([[1.0], [0.0], [2.0]])
    assert not flag
    assert witness == (1,)


def test_chebyshev_proportional_rows():
    flag, witness = is_chebyshev_system([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [2.0, 2.0]])
    assert not flag
    assert witness == (2, 3)


def test_chebyshev_guard():
    rng = np.random.default_rng(59)
    with pytest.raises(ValueError):
        is_chebyshev_system(rng.standard_normal((60, 5)))


def test_grid_min_examples():
    assert grid_min([[1.0], [1.0]], [0.0, 2.0], 5.0, 6) == pytest.approx(1.0, abs=1e-5)
    assert grid_min(V3, A3, 5.0, 6) == pytest.approx(1.0, abs=1e-5)
    rng = np.random.default_rng(61)
    v = rng.standard_normal((5, 2))
    c = np.array([0.3, -0.2])
    assert grid_min(v, v @ c, 5.0, 6) <= 1e-5


def test_grid_min_rejects_large_r():
    with pytest.raises(ValueError):
        grid_min(np.ones((4, 3)), np.ones(4), 5.0, 6)


def test_grid_upper_bounds_true_minimum():
    rng = np.random.default_rng(67)
    for _ in range(15):
        r = int(rng.integers(1, 3))
        n = int(rng.integers(r + 1, 8))
        v = rng.standard_normal((n, r))
        a = rng.standard_normal(n)
        mu, _ = combinatorial_mu(v, a)
        assert grid_min(v, a, 10.0, 6) >= mu - 1e-5
