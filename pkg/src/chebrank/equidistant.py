"""Best equal-deviation solutions for (r+1) x r systems.

Two independent routes are provided.  The determinant route forms the
optimum as a cofactor-weighted average of the delete-one-row solutions;
the sign route first recovers the residual sign pattern from the
nullspace of V^T and then solves one square system in (u, rho).  Each
route validates the other in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateSystem
from .linalg import as_matrix, as_vector

__all__ = [
    "EquidistantSolution",
    "equidistant_by_determinants",
    "equidistant_by_signs",
]


@dataclass
class EquidistantSolution:
    """Coefficients u, common deviation rho, residual sign pattern.

    ``cofactors`` holds the delete-one-row determinants D_j and is only
    populated by the determinant route.
    """

    u: np.ndarray
    rho: float
    signs: np.ndarray
    cofactors: np.ndarray | None = None


def _check_system(v, a):
    vm = as_matrix(v, "system matrix")
    av = as_vector(a, "right-hand side")
    rp1, r = vm.shape
    if rp1 != r + 1:
        raise ValueError(f"system matrix must have shape (r+1, r), got {vm.shape}")
    if av.shape[0] != rp1:
        raise ValueError(f"right-hand side length {av.shape[0]} != {rp1}")
    return vm, av


def equidistant_by_determinants(v, a) -> EquidistantSolution:
    """Cofactor-average formula for the best equal-deviation point.

    With D_j the determinant of the system matrix with row j deleted and
    u^j the exact solution on the remaining rows,

        u* = sum_j |D_j| u^j / sum_j |D_j|
        rho = |sum_j (-1)^j D_j a_j| / sum_j |D_j|

    Rows with D_j = 0 carry zero weight and are never solved for.
    """
    vm, av = _check_system(v, a)
    rp1, r = vm.shape
    dets = np.empty(rp1)
    keep = np.arange(rp1)
    for j in range(rp1):
        sub = np.ascontiguousarray(vm[keep != j, :])
        dets[j] = _kernels.det_kernel(sub)
    weight_total = float(np.sum(np.abs(dets)))
    if weight_total == 0.0:
        raise DegenerateSystem("all delete-one-row determinants vanish")
    u = np.zeros(r)
    for j in range(rp1):
        if dets[j] == 0.0:
            continue
        sub = np.ascontiguousarray(vm[keep != j, :])
        perm, sign, singular = _kernels.lu_factor_inplace(sub)
        uj = _kernels.lu_solve_packed(sub, perm, np.ascontiguousarray(av[keep != j]))
        u += abs(dets[j]) * uj
    u /= weight_total
    # (-1)^(j+1) below is the 1-based (-1)^j of the alternating sum
    alt = np.where(np.arange(rp1) % 2 == 0, -1.0, 1.0)
    rho = abs(float(np.dot(alt * dets, av))) / weight_total
    resid = av - vm @ u
    signs = np.where(resid < 0.0, -1.0, 1.0)
    return EquidistantSolution(u=u, rho=rho, signs=signs, cofactors=dets)


def equidistant_by_signs(v, a) -> EquidistantSolution:
    """O(r^3) sign-system route for the best equal-deviation point.

    Requires a Chebyshev system: the nullspace vector of V^T must have no
    zero component, otherwise DegenerateSystem is raised.
    """
    vm, av = _check_system(v, a)
    status, u, rho, signs = _kernels.equi_signs_kernel(vm, av)
    if status == _kernels.DEGENERATE_NULLSPACE:
        raise DegenerateSystem("every delete-one-row submatrix is singular")
    if status == _kernels.DEGENERATE_ZERO_SIGN:
        raise DegenerateSystem("nullspace vector has a zero component (not a Chebyshev system)")
    if status == _kernels.DEGENERATE_SQUARE:
        raise DegenerateSystem("sign-pattern system is singular")
    return EquidistantSolution(u=u, rho=float(rho), signs=signs, cofactors=None)
