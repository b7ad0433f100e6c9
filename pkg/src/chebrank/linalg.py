"""Dense linear algebra primitives.

Matrices are plain 2-D float64 numpy arrays in row-major order; no
wrapper class is used.  The factorizations here are small and
self-contained (no LAPACK) so that results are identical across BLAS
thread settings, which the reproducibility contracts require.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateSystem

__all__ = [
    "LuFactorization",
    "as_matrix",
    "as_vector",
    "max_abs_norm",
    "lu_factor",
    "determinant",
    "lu_solve",
    "qr_orthonormal",
]


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and convert to a C-contiguous float64 2-D array."""
    m = np.ascontiguousarray(np.asarray(a, dtype=np.float64))
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {m.shape}")
    if m.shape[0] == 0 or m.shape[1] == 0:
        raise ValueError(f"{name} must be nonempty, got shape {m.shape}")
    return m


def as_vector(b, name: str = "vector") -> np.ndarray:
    """Validate and convert to a contiguous float64 1-D array."""
    v = np.ascontiguousarray(np.asarray(b, dtype=np.float64))
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {v.shape}")
    return v


def _square(a, name: str) -> np.ndarray:
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    return m


@dataclass
class LuFactorization:
    """Packed L\\U factors with row permutation and parity."""

    lu: np.ndarray
    perm: np.ndarray
    sign: float
    singular_flag: bool

    @property
    def size(self) -> int:
        return self.lu.shape[0]


def max_abs_norm(a) -> float:
    """Largest absolute entry (the Chebyshev norm of a matrix)."""
    m = as_matrix(a)
    return float(np.max(np.abs(m)))


def lu_factor(a) -> LuFactorization:
    """Partial-pivot LU factorization of a square matrix.

    The factorization is flagged singular when any pivot magnitude falls
    below 1e-13 times the column scale (column max magnitude, floored at
    1.0); the packed factors are then only partially filled.
    """
    m = _square(a, "matrix").copy()
    perm, sign, singular = _kernels.lu_factor_inplace(m)
    return LuFactorization(lu=m, perm=perm, sign=float(sign), singular_flag=bool(singular))


def determinant(a) -> float:
    """Determinant via pivoted LU; exactly 0.0 for singular input."""
    m = _square(a, "matrix")
    return float(_kernels.det_kernel(m))


def lu_solve(fact: LuFactorization, b) -> np.ndarray:
    """Solve A x = b given the factorization of A."""
    if fact.singular_flag:
        raise DegenerateSystem("cannot solve with a singular factorization")
    rhs = as_vector(b, "right-hand side")
    if rhs.shape[0] != fact.size:
        raise ValueError(f"right-hand side length {rhs.shape[0]} != dimension {fact.size}")
    return _kernels.lu_solve_packed(fact.lu, fact.perm, rhs)


def qr_orthonormal(a) -> np.ndarray:
    """Orthonormal factor from Householder QR of a square matrix.

    Sign convention: the implied R has a nonnegative diagonal, making the
    result unique for full-rank input (the identity maps to itself).
    """
    m = _square(a, "matrix")
    return _kernels.qr_orthonormal_kernel(m)
