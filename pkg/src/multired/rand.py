"""Random states for property tests and experiment scripts."""

from __future__ import annotations

import numpy as np


def ginibre(dim: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Hilbert-Schmidt random state (full rank unless ``rank`` is given)."""
    g = ginibre(dim, dim if rank is None else rank, rng)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = ginibre(dim, 1, rng)[:, 0]
    return v / np.linalg.norm(v)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = ginibre(dim, dim, rng)
    return (g + g.conj().T) / 2
