"""Reduction criterion on bipartite states and on their tensor powers.

Copies of a bipartite state are ordered ``A1..An B1..Bn``. Applying the
n-party reduction map to the B block factorizes copy by copy, so the test
on ``n`` copies detects exactly the states the single-copy reduction
criterion detects.
"""

from __future__ import annotations

from math import prod
from typing import Sequence

import numpy as np

from multired.errors import ResourceError, ShapeError
from multired.reduction import DetectionResult, apply_on_subset, detect, regrouped_pair_product
from multired.tensor import DEFAULT_TOL, check_dims

POWER_SIDE_CAP = 2**12


def _bipartite(rho: np.ndarray, dims: Sequence[int]) -> tuple[np.ndarray, tuple[int, int]]:
    if len(dims) != 2:
        raise ShapeError(f"bipartite state needs two subsystems, got dims {tuple(dims)}")
    rho = np.asarray(rho, dtype=complex)
    check_dims(rho, dims)
    return rho, (int(dims[0]), int(dims[1]))


def _grouped(op: np.ndarray, dims: tuple[int, int], n: int, cap: int) -> np.ndarray:
    if prod(dims) ** n > cap:
        raise ResourceError(f"{n} copies of a {prod(dims)}-dimensional state exceed side cap {cap}")
    return regrouped_pair_product([op] * n, [dims] * n)


def tensor_power_grouped(rho: np.ndarray, dims: Sequence[int], n: int, cap: int = POWER_SIDE_CAP) -> np.ndarray:
    """``rho^{⊗n}`` with systems ordered ``A1..An B1..Bn``."""
    if n < 1:
        raise ValueError("need at least one copy")
    rho, dims = _bipartite(rho, dims)
    return _grouped(rho, dims, n, cap)


def power_dims(dims: Sequence[int], n: int) -> list[int]:
    return [int(dims[0])] * n + [int(dims[1])] * n


def reduction_on_copies(rho: np.ndarray, dims: Sequence[int], n: int, cap: int = POWER_SIDE_CAP) -> np.ndarray:
    """n-party reduction map on the B block of ``rho^{⊗n}``."""
    power = tensor_power_grouped(rho, dims, n, cap)
    return apply_on_subset(power, power_dims(dims, n), range(n + 1, 2 * n + 1))


def copy_factorization_check(rho: np.ndarray, dims: Sequence[int], n: int, tol: float = 1e-11, cap: int = POWER_SIDE_CAP) -> bool:
    """Reduction map on n copies equals the n-th power of the single-copy reduction."""
    rho, dims = _bipartite(rho, dims)
    lhs = reduction_on_copies(rho, dims, n, cap)
    rhs = _grouped(apply_on_subset(rho, dims, [2]), dims, n, cap)
    return bool(np.max(np.abs(lhs - rhs)) <= tol)


def reduction_distillable(rho: np.ndarray, dims: Sequence[int], tol: float = DEFAULT_TOL) -> DetectionResult:
    """Reduction criterion ``rho_A ⊗ I - rho >= 0``; violation certifies 1-distillability."""
    rho, dims = _bipartite(rho, dims)
    return detect(rho, dims, [2], tol)


def equivalence_check(rho: np.ndarray, dims: Sequence[int], n: int, tol: float = DEFAULT_TOL, cap: int = POWER_SIDE_CAP) -> bool:
    """Detection on n copies agrees with single-copy detection."""
    single = reduction_distillable(rho, dims, tol)
    many = DetectionResult.from_operator(reduction_on_copies(rho, dims, n, cap), range(n + 1, 2 * n + 1), tol)
    return single.detected == many.detected
