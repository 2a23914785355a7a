"""Generalized reduction maps and the separability tests built from them.

For an n-partite operator the map is the signed sum over all subsets ``B``
of the parties,

    Lambda_n(rho) = sum_B (-1)^{|B|} rho_B,

where ``rho_B`` is the marginal on ``B`` padded with identities elsewhere.
``Lambda_1`` is the ordinary reduction map ``Tr(rho) I - rho``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations
from math import prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from multired.errors import (
    IncompleteInputError,
    InvalidSubsystemError,
    ResourceError,
    ShapeError,
    UnsupportedParityError,
)
from multired.tensor import (
    DEFAULT_TOL,
    check_dims,
    min_eigenvalue,
    pad_with_identity,
    partial_trace,
    partial_transpose,
    permute_systems,
    schmidt_decompose,
    subsystems,
    swap_operator,
    tensor_product,
)

CHOI_SIDE_CAP = 2**12


@dataclass(frozen=True)
class DetectionResult:
    min_eigenvalue: float
    detected: bool
    subset: tuple[int, ...]
    tolerance: float
    warnings: tuple[str, ...] = field(default=())

    @classmethod
    def from_operator(cls, op: np.ndarray, subset: Sequence[int], tol: float, notes: Sequence[str] = ()):
        lam = min_eigenvalue(op)
        return cls(lam, lam < -tol, tuple(subset), tol, tuple(notes))


def _subsets(items: Sequence[int]):
    """All subsets of ``items`` in bitmask order 0..2^k-1."""
    k = len(items)
    for mask in range(2**k):
        yield tuple(items[i] for i in range(k) if mask >> i & 1)


def padded_marginal(rho: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """``rho_B``: the marginal on ``keep`` padded with identities; ``B = ∅`` gives ``Tr(rho) I``."""
    keep = subsystems(keep, len(dims))
    return pad_with_identity(partial_trace(rho, dims, keep), dims, keep)


def generalized_reduction_map(rho: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    """Apply the n-party reduction map to ``rho`` on all ``len(dims)`` systems."""
    dims = [int(d) for d in dims]
    if not dims:
        raise ShapeError("need at least one subsystem")
    rho = np.asarray(rho, dtype=complex)
    check_dims(rho, dims)
    return apply_on_subset(rho, dims, range(1, len(dims) + 1))


def apply_on_subset(rho: np.ndarray, dims: Sequence[int], subset: Iterable[int]) -> np.ndarray:
    """``I_{N\\A} ⊗ Lambda_A`` applied to ``rho`` for the parties ``A = subset``.

    Computed as the signed sum of padded marginals on ``(N \\ A) ∪ B`` over
    all ``B ⊆ A``. For a tripartite state, ``A = {3}`` yields
    ``rho_12 ⊗ I - rho`` and ``A = {2, 3}`` yields
    ``rho_1 - rho_12 - rho_13 + rho``.
    """
    dims = [int(d) for d in dims]
    n = len(dims)
    rho = np.asarray(rho, dtype=complex)
    check_dims(rho, dims)
    subset = subsystems(subset, n, allow_empty=False)
    rest = tuple(i for i in range(1, n + 1) if i not in subset)
    out = np.zeros_like(rho)
    for b in _subsets(subset):
        sign = -1 if len(b) % 2 else 1
        out += sign * padded_marginal(rho, dims, rest + b)
    return out


def detect(rho: np.ndarray, dims: Sequence[int], subset: Iterable[int], tol: float = DEFAULT_TOL) -> DetectionResult:
    """Check ``I ⊗ Lambda_A (rho) >= 0``; a violation certifies entanglement.

    Eigenvalues in ``[-tol, 0)`` are not counted as a detection.
    """
    subset = subsystems(subset, len(dims), allow_empty=False)
    return DetectionResult.from_operator(apply_on_subset(rho, dims, subset), subset, tol)


def product_extension_negativity(
    rho: np.ndarray,
    rho_dims: Sequence[int],
    sigma: np.ndarray,
    sigma_dims: Sequence[int],
    tol: float = DEFAULT_TOL,
) -> bool:
    """Whether detection of ``rho`` by the map on parties 2..n carries over to ``rho ⊗ sigma``.

    Returns True when ``rho`` is not detected (nothing to check) or when
    ``rho ⊗ sigma`` is detected with the map on parties 2..n+m.
    """
    rho_dims, sigma_dims = list(rho_dims), list(sigma_dims)
    n = len(rho_dims)
    if n < 2:
        raise InvalidSubsystemError("rho needs at least two parties")
    if not detect(rho, rho_dims, range(2, n + 1), tol).detected:
        return True
    dims = rho_dims + sigma_dims
    joint = tensor_product(rho, sigma)
    return detect(joint, dims, range(2, len(dims) + 1), tol).detected


def plus_state_projector(dims: Sequence[int]) -> np.ndarray:
    """Unnormalized maximally entangled projector on ``K ⊗ K``, ``K = ⊗ C^{d_i}``."""
    side = prod(int(d) for d in dims)
    v = np.eye(side).ravel()
    return np.outer(v, v).astype(complex)


def _check_cap(side: int, cap: int) -> None:
    if side > cap:
        raise ResourceError(f"matrix side {side} exceeds cap {cap}")


def choi_operator(dims: Sequence[int], cap: int = CHOI_SIDE_CAP) -> np.ndarray:
    """``(I ⊗ Lambda_n)(P+)`` with systems ordered 1..n then n+1..2n."""
    dims = [int(d) for d in dims]
    n = len(dims)
    _check_cap(prod(dims) ** 2, cap)
    return apply_on_subset(plus_state_projector(dims), dims + dims, range(n + 1, 2 * n + 1))


def regrouped_pair_product(pair_ops: Sequence[np.ndarray], pair_dims: Sequence[tuple[int, int]]) -> np.ndarray:
    """``⊗_k (X_k)_{k,n+k}`` laid out on systems 1..2n.

    ``X_k`` acts on the pair ``(k, n+k)`` with local dimensions ``pair_dims[k-1]``.
    """
    n = len(pair_dims)
    flat = [d for pair in pair_dims for d in pair]
    # In the pair layout system k sits at position 2k-1 and system n+k at 2k.
    order = [2 * k - 1 for k in range(1, n + 1)] + [2 * k for k in range(1, n + 1)]
    return permute_systems(tensor_product(*pair_ops), flat, order)


def choi_pt_identity_check(dims: Sequence[int], tol: float = 0.0, cap: int = CHOI_SIDE_CAP) -> bool:
    """Partial transpose of the Choi operator over n+1..2n equals ``⊗_k (I - V)_{k,n+k}``.

    Also requires that operator to be positive semidefinite. With the default
    ``tol=0`` the comparison is exact; all entries are small integers.
    """
    dims = [int(d) for d in dims]
    n = len(dims)
    a = choi_operator(dims, cap)
    lhs = partial_transpose(a, dims + dims, range(n + 1, 2 * n + 1))
    rhs = regrouped_pair_product([np.eye(d * d) - swap_operator(d) for d in dims], [(d, d) for d in dims])
    if tol == 0.0:
        same = np.array_equal(lhs, rhs)
    else:
        same = bool(np.max(np.abs(lhs - rhs)) <= tol)
    return same and min_eigenvalue(rhs) >= -max(tol, DEFAULT_TOL)


def antisymmetric_decomposition_check(d: int) -> bool:
    """``sum_{i<j} |psi_ij><psi_ij| == I - V`` with ``|psi_ij> = |ij> - |ji>``.

    Each ``|psi_ij>`` must also have Schmidt rank exactly 2.
    """
    total = np.zeros((d * d, d * d), dtype=int)
    for i, j in combinations(range(d), 2):
        psi = np.zeros(d * d, dtype=int)
        psi[i * d + j] += 1
        psi[j * d + i] -= 1
        if schmidt_decompose(psi, (d, d)).rank != 2:
            return False
        total += np.outer(psi, psi)
    swap = swap_operator(d).real.astype(int)
    return np.array_equal(total, np.eye(d * d, dtype=int) - swap)


def map_from_choi(choi: np.ndarray, rho: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    """Recover ``Lambda(rho) = Tr_A[D (rho^T ⊗ I)]`` from a Choi operator ``D`` on ``K ⊗ K``."""
    dims = [int(d) for d in dims]
    n = len(dims)
    rho = np.asarray(rho, dtype=complex)
    check_dims(rho, dims)
    check_dims(np.asarray(choi), dims + dims)
    side = prod(dims)
    prod_op = choi @ np.kron(rho.T, np.eye(side))
    return partial_trace(prod_op, dims + dims, range(n + 1, 2 * n + 1))


@dataclass
class MarginalSet:
    """Reduced states on every proper nonempty subset of n parties."""

    dims: list[int]
    marginals: dict[tuple[int, ...], np.ndarray]

    @property
    def n(self) -> int:
        return len(self.dims)

    @classmethod
    def from_state(cls, rho: np.ndarray, dims: Sequence[int]) -> "MarginalSet":
        dims = [int(d) for d in dims]
        n = len(dims)
        ms = {
            b: partial_trace(rho, dims, b)
            for k in range(1, n)
            for b in combinations(range(1, n + 1), k)
        }
        return cls(dims, ms)

    @classmethod
    def from_blocks(cls, blocks: Mapping[tuple[int, ...], tuple[np.ndarray, Sequence[int]]], n: int | None = None):
        """Build from parsed ``{subset: (matrix, local dims)}`` blocks."""
        if n is None:
            n = max((max(s) for s in blocks if s), default=0)
        dims = [0] * n
        marginals = {}
        for subset, (op, local) in blocks.items():
            subset = subsystems(subset, n, allow_empty=False)
            if len(local) != len(subset):
                raise ShapeError(f"subset {subset} given {len(local)} local dims")
            for i, d in zip(subset, local):
                if dims[i - 1] not in (0, d):
                    raise ShapeError(f"inconsistent dimension for party {i}")
                dims[i - 1] = int(d)
            marginals[subset] = np.asarray(op, dtype=complex)
        if 0 in dims:
            missing = [i + 1 for i, d in enumerate(dims) if d == 0]
            raise IncompleteInputError(f"no marginal fixes the dimension of parties {missing}")
        return cls(dims, marginals)

    def missing(self) -> list[tuple[int, ...]]:
        n = self.n
        return [
            b
            for k in range(1, n)
            for b in combinations(range(1, n + 1), k)
            if b not in self.marginals
        ]

    def consistency_warnings(self, tol: float = 1e-8) -> list[str]:
        """Report normalization and partial-trace disagreements above ``tol``."""
        notes = []
        traces = {b: complex(np.trace(m)) for b, m in self.marginals.items()}
        ref = next(iter(traces.values()), 1.0)
        for b, t in traces.items():
            if abs(t - ref) > tol:
                notes.append(f"marginal {b} has trace {t.real:.12g}, expected {ref.real:.12g}")
        for b, m in self.marginals.items():
            if min_eigenvalue(m) < -tol:
                notes.append(f"marginal {b} is not positive semidefinite")
            local = [self.dims[i - 1] for i in b]
            for sub in _subsets(b):
                if not sub or sub == b or sub not in self.marginals:
                    continue
                keep = [b.index(i) + 1 for i in sub]
                diff = np.max(np.abs(partial_trace(m, local, keep) - self.marginals[sub]))
                if diff > tol:
                    notes.append(f"marginal {sub} disagrees with partial trace of {b} by {diff:.3g}")
        return notes


def marginal_alternating_sum(m: MarginalSet) -> np.ndarray:
    """``sum_{B ⊊ N} (-1)^{|B|} rho_B`` built from the marginals alone."""
    n = m.n
    side = prod(m.dims)
    norm = np.trace(next(iter(m.marginals.values()))) if m.marginals else 1.0
    out = norm * np.eye(side, dtype=complex)
    for b in _subsets(tuple(range(1, n + 1))):
        if not b or len(b) == n:
            continue
        sign = -1 if len(b) % 2 else 1
        out += sign * pad_with_identity(m.marginals[b], m.dims, b)
    return out


def marginal_compatibility_check(m: MarginalSet, tol: float = DEFAULT_TOL, consistency_tol: float = 1e-8) -> DetectionResult:
    """Necessary test that the marginals come from one global state (odd n only).

    ``detected=True`` means the marginals are incompatible with every global
    state. Inconsistent marginals only produce warnings.
    """
    n = m.n
    if n % 2 == 0:
        raise UnsupportedParityError(f"compatibility test needs an odd number of parties, got {n}")
    if n < 3:
        raise UnsupportedParityError("compatibility test needs at least three parties")
    missing = m.missing()
    if missing:
        raise IncompleteInputError(f"missing marginals for subsets {missing}")
    for b, op in m.marginals.items():
        check_dims(op, [m.dims[i - 1] for i in b])
    notes = m.consistency_warnings(consistency_tol)
    for note in notes:
        warnings.warn(note, stacklevel=2)
    return DetectionResult.from_operator(marginal_alternating_sum(m), tuple(range(1, n + 1)), tol, notes)
