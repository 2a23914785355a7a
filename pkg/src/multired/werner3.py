"""Tripartite Werner operators on (C^d)^{⊗3}.

The six permutation operators of S3 are recombined into the basis

    R+  = (1/6)(I + V12 + V13 + V23 + V123 + V132)
    R-  = (1/6)(I - V12 - V13 - V23 + V123 + V132)
    R0  = (1/3)(2I - V123 - V132)
    R1  = (1/3)(2V23 - V13 - V12)
    R2  = (1/sqrt3)(V12 - V13)
    R3  = (i/sqrt3)(V123 - V132)

R+, R-, R0 are orthogonal projectors and R1, R2, R3 act as Pauli matrices
inside the range of R0. Any Werner operator is ``sum_k c_k R_k``.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass
from functools import lru_cache
from math import sqrt

import numpy as np

from multired.errors import InvalidParameterError
from multired.reduction import apply_on_subset
from multired.tensor import permutation_from_cycles, permutation_operator

LABELS = ("+", "-", "0", "1", "2", "3")


@dataclass(frozen=True)
class WernerCoefficients:
    c_plus: float
    c_minus: float
    c0: float
    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)

    def operator(self, d: int) -> np.ndarray:
        return sum(c * r for c, r in zip(self.as_tuple(), r_operators(d)))


@dataclass(frozen=True)
class WernerExpectations:
    r_plus: float
    r_minus: float
    r0: float
    r1: float = 0.0
    r2: float = 0.0
    r3: float = 0.0


@dataclass(frozen=True)
class FamilyParams:
    """Slice ``rho = (a R+ + (1-a) R0 + b R1) / N`` of the Werner states."""

    d: int
    a: float
    b: float

    def validate(self) -> "FamilyParams":
        if self.d < 2:
            raise InvalidParameterError(f"local dimension must be at least 2, got {self.d}")
        if not 0.0 <= self.a <= 1.0:
            raise InvalidParameterError(f"a={self.a} outside [0, 1]")
        if abs(self.b) > self.a:
            raise InvalidParameterError(f"|b|={abs(self.b)} exceeds a={self.a}")
        return self


@dataclass(frozen=True)
class SpectrumEntry:
    value: float
    multiplicity: int
    suppressed: bool = False


@dataclass(frozen=True)
class AnalyticSpectrum:
    entries: tuple[SpectrumEntry, ...]

    def values(self) -> np.ndarray:
        """Ascending eigenvalue multiset, suppressed entries omitted."""
        parts = [np.full(e.multiplicity, e.value) for e in self.entries if not e.suppressed]
        return np.sort(np.concatenate(parts)) if parts else np.empty(0)

    def min(self) -> float:
        return min(e.value for e in self.entries if not e.suppressed)

    @property
    def dimension(self) -> int:
        return sum(e.multiplicity for e in self.entries if not e.suppressed)


@lru_cache(maxsize=None)
def _r_operators(d: int) -> tuple[np.ndarray, ...]:
    def v(*cycles):
        return permutation_operator(permutation_from_cycles(3, *cycles), d)

    e, v12, v13, v23 = v(), v((1, 2)), v((1, 3)), v((2, 3))
    v123, v132 = v((1, 2, 3)), v((1, 3, 2))
    ops = (
        (e + v12 + v13 + v23 + v123 + v132) / 6,
        (e - v12 - v13 - v23 + v123 + v132) / 6,
        (2 * e - v123 - v132) / 3,
        (2 * v23 - v13 - v12) / 3,
        (v12 - v13) / sqrt(3),
        1j * (v123 - v132) / sqrt(3),
    )
    for op in ops:
        op.setflags(write=False)
    return ops


def r_operators(d: int) -> tuple[np.ndarray, ...]:
    """``(R+, R-, R0, R1, R2, R3)`` on ``(C^d)^{⊗3}``; cached, read-only."""
    if d < 2:
        raise InvalidParameterError(f"local dimension must be at least 2, got {d}")
    return _r_operators(int(d))


def multiplicities(d: int) -> tuple[int, int, int]:
    """``(nu+, nu-, nu0)``: ranks of R+, R-, and half the rank of R0."""
    return (
        d * (d * d + 3 * d + 2) // 6,
        d * (d * d - 3 * d + 2) // 6,
        d * (d * d - 1) // 3,
    )


def expectations_from_coefficients(c: WernerCoefficients, d: int) -> WernerExpectations:
    nu_p, nu_m, nu_0 = multiplicities(d)
    return WernerExpectations(
        c.c_plus * nu_p,
        c.c_minus * nu_m,
        2 * c.c0 * nu_0,
        2 * c.c1 * nu_0,
        2 * c.c2 * nu_0,
        2 * c.c3 * nu_0,
    )


def expectations_of(rho: np.ndarray, d: int) -> WernerExpectations:
    """``r_k = Tr(rho R_k)`` computed from matrices."""
    return WernerExpectations(*(float(np.trace(rho @ r).real) for r in r_operators(d)))


def is_valid_werner(r: WernerExpectations, tol: float = 1e-12) -> bool:
    """Whether expectation values ``r_k`` describe a density matrix."""
    return (
        min(r.r_plus, r.r_minus, r.r0) >= -tol
        and abs(r.r_plus + r.r_minus + r.r0 - 1) <= tol
        and r.r1**2 + r.r2**2 + r.r3**2 <= r.r0**2 + tol
    )


def spectrum_from_coefficients(c: WernerCoefficients, d: int) -> AnalyticSpectrum:
    """Spectrum of ``sum_k c_k R_k``: c+, c-, and c0 ± |(c1, c2, c3)|."""
    nu_p, nu_m, nu_0 = multiplicities(d)
    s = sqrt(c.c1**2 + c.c2**2 + c.c3**2)
    return AnalyticSpectrum(
        (
            SpectrumEntry(c.c_plus, nu_p, nu_p == 0),
            SpectrumEntry(c.c_minus, nu_m, nu_m == 0),
            SpectrumEntry(c.c0 + s, nu_0, nu_0 == 0),
            SpectrumEntry(c.c0 - s, nu_0, nu_0 == 0),
        )
    )


def normalization(d: int, a: float) -> float:
    """Trace of ``a R+ + (1-a) R0 + b R1``; independent of ``b``."""
    return d * (d + 1) * (3 * a * (2 - d) + 4 * (d - 1)) / 6


def family_operator_unchecked(d: int, a: float, b: float) -> np.ndarray:
    """Family member without the validity check; may fail to be PSD."""
    rp, _, r0, r1, _, _ = r_operators(d)
    return (a * rp + (1 - a) * r0 + b * r1) / normalization(d, a)


def family_state(p: FamilyParams) -> np.ndarray:
    p.validate()
    return family_operator_unchecked(p.d, p.a, p.b)


def family_reduction_expansions(p: FamilyParams) -> tuple[WernerCoefficients, WernerCoefficients]:
    """R-basis coefficients of ``rho_12 - rho`` and ``rho_1 - rho_12 - rho_13 + rho``."""
    p.validate()
    d, a, b = p.d, p.a, p.b
    n = normalization(d, a)
    red1 = WernerCoefficients(
        (d - 1) * (2 - a - b) / (3 * n),
        (d + 1) * (2 - 2 * a + b) / (3 * n),
        (a * (d + 2) + (1 - a) * (4 * d - 6) + 2 * b) / (6 * n),
        -(a * (d + 2) - 4 * (1 - a) + b * (12 - 2 * d)) / (12 * n),
        sqrt(3) * (a * (d + 2) - 4 * (1 - a) - 2 * b * d) / (12 * n),
        0.0,
    )
    # c_minus carries +4(1-a)(d+1)(d-3) and c1 carries +b(6-2d); both signs
    # are pinned by projecting the dense operator onto the R basis.
    red2 = WernerCoefficients(
        (a * ((d + 2) * (d - 3) + 6) + 4 * (1 - a) * (d - 1) ** 2 + 4 * b * (d - 1)) / (6 * n),
        (a * (d + 1) * (d + 2) + 4 * (1 - a) * (d + 1) * (d - 3) - 4 * b * (d + 1)) / (6 * n),
        (a * (d - 1) * (d + 2) + (1 - a) * (4 * (d - 1) * (d + 1) - 8 * d + 6) - 4 * b) / (6 * n),
        (a * (d + 2) - 4 * (1 - a) + b * (6 - 2 * d)) / (6 * n),
        0.0,
        0.0,
    )
    return red1, red2


def analytic_eigs_red1(p: FamilyParams) -> AnalyticSpectrum:
    """Closed-form spectrum of ``rho_12 - rho`` for the family."""
    p.validate()
    d, a, b = p.d, p.a, p.b
    n = normalization(d, a)
    nu_p, nu_m, nu_0 = multiplicities(d)
    s = sqrt(
        0.25 * (a * (d + 2) - 4 * (1 - a) + b * (12 - 2 * d)) ** 2
        + 0.75 * (a * (d + 2) - 4 * (1 - a) - 2 * b * d) ** 2
    )
    mid = a * (d + 2) + (1 - a) * (4 * d - 6) + 2 * b
    return AnalyticSpectrum(
        (
            SpectrumEntry((d - 1) * (2 - a - b) / (3 * n), nu_p),
            SpectrumEntry((d + 1) * (2 - 2 * a + b) / (3 * n), nu_m, nu_m == 0),
            SpectrumEntry((mid + s) / (6 * n), nu_0),
            SpectrumEntry((mid - s) / (6 * n), nu_0),
        )
    )


def analytic_eigs_red2(p: FamilyParams) -> AnalyticSpectrum:
    """Closed-form spectrum of ``rho_1 - rho_12 - rho_13 + rho`` for the family."""
    p.validate()
    d, a, b = p.d, p.a, p.b
    n = normalization(d, a)
    nu_p, nu_m, nu_0 = multiplicities(d)
    q = 2 * (d + 1) * (d - 1) - 4 * d
    return AnalyticSpectrum(
        (
            SpectrumEntry(
                (a * ((d + 2) * (d - 3) + 6) + 4 * (1 - a) * (d - 1) ** 2 + 4 * b * (d - 1)) / (6 * n), nu_p
            ),
            SpectrumEntry(
                (a * (d + 1) * (d + 2) + 4 * (1 - a) * (d + 1) * (d - 3) - 4 * b * (d + 1)) / (6 * n),
                nu_m,
                nu_m == 0,
            ),
            SpectrumEntry((a * d * (d + 2) + 2 * (1 - a) * (q + 1) + 2 * b * (1 - d)) / (6 * n), nu_0),
            SpectrumEntry((a * (d + 2) * (d - 2) + 2 * (1 - a) * (q + 5) + b * (2 * d - 10)) / (6 * n), nu_0),
        )
    )


def expansion_spectra(p: FamilyParams) -> tuple[AnalyticSpectrum, AnalyticSpectrum]:
    """Spectra of both operators via their R-basis expansions."""
    red1, red2 = family_reduction_expansions(p)
    return spectrum_from_coefficients(red1, p.d), spectrum_from_coefficients(red2, p.d)


def reduction_operators(p: FamilyParams) -> tuple[np.ndarray, np.ndarray]:
    """Dense ``rho_12 - rho`` and ``rho_1 - rho_12 - rho_13 + rho``."""
    rho = family_state(p)
    dims = [p.d] * 3
    return apply_on_subset(rho, dims, [3]), apply_on_subset(rho, dims, [2, 3])


def symmetry_check_red13(p: FamilyParams, tol: float = 1e-10) -> bool:
    """``rho_13 - rho`` and ``rho_12 - rho`` have the same spectrum."""
    rho = family_state(p)
    dims = [p.d] * 3
    e12 = np.linalg.eigvalsh(apply_on_subset(rho, dims, [3]))
    e13 = np.linalg.eigvalsh(apply_on_subset(rho, dims, [2]))
    return bool(np.max(np.abs(e12 - e13)) <= tol)
