"""Dense tensor-product machinery on multipartite operators.

Operators are plain complex ``numpy`` arrays accompanied by a ``dims``
sequence giving the local dimensions. Subsystems are labelled 1..n and the
composite index is big-endian: system 1 is the most significant digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

from multired.errors import (
    HermiticityError,
    InvalidSubsystemError,
    NotADensityMatrixError,
    ShapeError,
)

DEFAULT_TOL = 1e-10


def subsystems(subset: Iterable[int], n: int, allow_empty: bool = True) -> tuple[int, ...]:
    """Validate a set of 1-based subsystem labels and return it sorted."""
    idx = tuple(sorted(set(int(i) for i in subset)))
    if not idx and not allow_empty:
        raise InvalidSubsystemError("subsystem set must be nonempty")
    for i in idx:
        if not 1 <= i <= n:
            raise InvalidSubsystemError(f"subsystem {i} outside 1..{n}")
    return idx


def check_dims(op: np.ndarray, dims: Sequence[int]) -> None:
    if any(int(d) < 1 for d in dims):
        raise ShapeError(f"dimensions must be positive, got {tuple(dims)}")
    side = prod(dims)
    if op.ndim != 2 or op.shape != (side, side):
        raise ShapeError(f"operator of shape {op.shape} does not match dims {tuple(dims)}")


def tensor_product(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of the operators, first factor most significant."""
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def permute_systems(op: np.ndarray, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder subsystems so that output system ``k`` is input system ``order[k-1]``.

    Equivalent to conjugation by :func:`system_permutation_matrix`.
    """
    dims = [int(d) for d in dims]
    n = len(dims)
    check_dims(op, dims)
    if sorted(order) != list(range(1, n + 1)):
        raise InvalidSubsystemError(f"{tuple(order)} is not a permutation of 1..{n}")
    axes = [o - 1 for o in order]
    side = prod(dims)
    t = op.reshape(dims + dims).transpose(axes + [n + a for a in axes])
    return t.reshape(side, side)


def system_permutation_matrix(dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Unitary ``P`` with ``P @ X @ P.T == permute_systems(X, dims, order)``."""
    dims = [int(d) for d in dims]
    side = prod(dims)
    n = len(dims)
    axes = [o - 1 for o in order]
    basis = np.eye(side).reshape(dims + [side])
    return basis.transpose(axes + [n]).reshape(side, side)


def partial_trace(op: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep`` (1-based).

    Kept systems retain their relative order. ``keep=()`` returns the 1x1
    matrix holding the full trace.
    """
    dims = [int(d) for d in dims]
    n = len(dims)
    check_dims(op, dims)
    keep = subsystems(keep, n)
    traced = [i for i in range(1, n + 1) if i not in keep]
    order = list(keep) + traced
    dk = prod(dims[i - 1] for i in keep)
    dt = prod(dims[i - 1] for i in traced)
    t = permute_systems(op, dims, order).reshape(dk, dt, dk, dt)
    return np.einsum("iaja->ij", t)


def pad_with_identity(sigma: np.ndarray, dims: Sequence[int], placement: Iterable[int]) -> np.ndarray:
    """Embed ``sigma`` on the ``placement`` systems, identity on the rest."""
    dims = [int(d) for d in dims]
    n = len(dims)
    placement = subsystems(placement, n)
    check_dims(sigma, [dims[i - 1] for i in placement])
    rest = [i for i in range(1, n + 1) if i not in placement]
    layout = list(placement) + rest
    full = np.kron(sigma, np.eye(prod(dims[i - 1] for i in rest)))
    # Output system k sits at position layout.index(k) of the contiguous layout.
    inverse = [layout.index(k) + 1 for k in range(1, n + 1)]
    return permute_systems(full, [dims[i - 1] for i in layout], inverse)


def partial_transpose(op: np.ndarray, dims: Sequence[int], subset: Iterable[int]) -> np.ndarray:
    """Transpose the row/column indices of the selected subsystems only."""
    dims = [int(d) for d in dims]
    n = len(dims)
    check_dims(op, dims)
    subset = subsystems(subset, n)
    axes = list(range(2 * n))
    for i in subset:
        axes[i - 1], axes[n + i - 1] = axes[n + i - 1], axes[i - 1]
    return op.reshape(dims + dims).transpose(axes).reshape(op.shape)


def permutation_from_cycles(n: int, *cycles: Sequence[int]) -> tuple[int, ...]:
    """Image tuple of the permutation of 1..n given in cycle notation.

    >>> permutation_from_cycles(3, (1, 2, 3))
    (2, 3, 1)
    """
    image = list(range(1, n + 1))
    for cyc in cycles:
        for k, src in enumerate(cyc):
            image[src - 1] = cyc[(k + 1) % len(cyc)]
    return tuple(image)


def permutation_operator(perm: Sequence[int], d: int) -> np.ndarray:
    """Operator ``V_pi`` on ``(C^d)^{⊗n}`` moving the factor in slot k to slot pi(k).

    ``perm`` lists the images ``(pi(1), ..., pi(n))``. With this convention
    ``V_pi @ V_sigma == V_{pi∘sigma}``.
    """
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise InvalidSubsystemError(f"{tuple(perm)} is not a permutation of 1..{n}")
    inverse = [0] * n
    for k, p in enumerate(perm):
        inverse[p - 1] = k + 1
    return system_permutation_matrix([d] * n, inverse)


def swap_operator(d: int) -> np.ndarray:
    return permutation_operator((2, 1), d)


def eigenvalues_hermitian(h: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Ascending real spectrum of a Hermitian matrix.

    The input is symmetrized before solving; asymmetry above
    ``tol * max(1, max|h_ij|)`` raises :class:`HermiticityError`.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {h.shape}")
    scale = max(1.0, float(np.max(np.abs(h), initial=0.0)))
    skew = float(np.max(np.abs(h - h.conj().T), initial=0.0))
    if skew > tol * scale:
        raise HermiticityError(f"matrix deviates from Hermitian by {skew:.3g}")
    return np.linalg.eigvalsh((h + h.conj().T) / 2)


def min_eigenvalue(h: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    return float(eigenvalues_hermitian(h, tol)[0])


def is_psd(h: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return min_eigenvalue(h) >= -tol


def check_density(rho: np.ndarray, dims: Sequence[int] | None = None, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Return ``rho`` as a complex array after checking it is a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if dims is not None:
        check_dims(rho, dims)
    tr = np.trace(rho)
    if abs(tr - 1) > tol:
        raise NotADensityMatrixError(f"trace {tr.real:.12g} differs from 1")
    lam = min_eigenvalue(rho, tol)
    if lam < -tol:
        raise NotADensityMatrixError(f"minimum eigenvalue {lam:.3g} is negative")
    return rho


def ket(*digits: int, dims: Sequence[int] | None = None) -> np.ndarray:
    """Computational basis vector ``|digits>``; qubits unless ``dims`` given."""
    dims = [2] * len(digits) if dims is None else list(dims)
    v = np.zeros(prod(dims), dtype=complex)
    v[np.ravel_multi_index(digits, dims)] = 1
    return v


def projector(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


@dataclass(frozen=True)
class SchmidtDecomposition:
    coefficients: np.ndarray
    left: np.ndarray  # columns are |a_i>
    right: np.ndarray  # columns are |b_i>

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def reconstruct(self) -> np.ndarray:
        return sum(
            (c * np.kron(self.left[:, i], self.right[:, i]) for i, c in enumerate(self.coefficients)),
            np.zeros(self.left.shape[0] * self.right.shape[0], dtype=complex),
        )


def schmidt_decompose(v: np.ndarray, dims: Sequence[int], tol: float = 1e-12) -> SchmidtDecomposition:
    """Schmidt decomposition of a bipartite vector via SVD.

    Coefficients below ``tol`` times the largest are discarded.
    """
    if len(dims) != 2:
        raise ShapeError(f"Schmidt decomposition needs two subsystems, got dims {tuple(dims)}")
    d1, d2 = (int(d) for d in dims)
    v = np.asarray(v, dtype=complex).ravel()
    if v.size != d1 * d2:
        raise ShapeError(f"vector of length {v.size} does not match dims {tuple(dims)}")
    u, s, vh = np.linalg.svd(v.reshape(d1, d2))
    cutoff = tol * (s[0] if s.size and s[0] > 0 else 1.0)
    r = int(np.sum(s > cutoff))
    return SchmidtDecomposition(s[:r], u[:, :r], vh[:r, :].T)
