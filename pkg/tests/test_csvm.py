import numpy as np
import pytest

from chebrank import read_matrix, write_matrix
from chebrank.csvm import format_entry


def test_round_trip_bit_exact(tmp_path):
    rng = np.random.default_rng(23)
    a = rng.standard_normal((6, 4)) * 10.0 ** rng.integers(-12, 12, size=(6, 4))
    path = tmp_path / "a.csv"
    write_matrix(path, a)
    b = read_matrix(path)
    assert b.shape == a.shape
    assert np.array_equal(a, b)


def test_format_is_17_significant_digits():
    assert format_entry(1.0) == "1"
    assert format_entry(1 / 3) == "0.33333333333333331"
    assert float(format_entry(np.pi)) == np.pi


def test_layout(tmp_path):
    path = tmp_path / "m.csv"
    write_matrix(path, [[1.5, -2.0], [0.0, 3.25]])
    assert path.read_bytes() == b"1.5,-2\n0,3.25\n"


def test_read_rejects_ragged(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,2\n3\n")
    with pytest.raises(ValueError):
        read_matrix(path)


def test_read_rejects_non_finite(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,nan\n")
    with pytest.raises(ValueError):
        read_matrix(path)
    path.write_text("inf,1\n")
    with pytest.raises(ValueError):
        read_matrix(path)


def test_read_rejects_empty(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(ValueError):
        read_matrix(path)


def test_read_rejects_garbage(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,hello\n")
    with pytest.raises(ValueError):
        read_matrix(path)
