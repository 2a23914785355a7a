"""Detection-region scan over the (a, b) slice of tripartite Werner states.

Each grid point is classified by whether ``rho_12 - rho`` (single-party
reduction on system 3) and ``rho_1 - rho_12 - rho_13 + rho`` (two-party
reduction on systems 2, 3) have a negative eigenvalue.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

from multired.reduction import apply_on_subset
from multired.tensor import DEFAULT_TOL
from multired.werner3 import FamilyParams, analytic_eigs_red1, analytic_eigs_red2, family_state

DENSE_BAND = 1e-9

# Extra placements evaluated with --all-cuts: column name -> parties acted on.
EXTRA_CUTS = {
    "min_eig_red1_on2": (2,),
    "min_eig_red1_on1": (1,),
    "min_eig_red2_on13": (1, 3),
    "min_eig_red2_on12": (1, 2),
}


class DetectionClass(enum.Enum):
    BOTH = "BOTH"
    ONLY_L2 = "ONLY_L2"
    ONLY_L1 = "ONLY_L1"
    NEITHER = "NEITHER"

    @classmethod
    def from_flags(cls, by_l1: bool, by_l2: bool) -> "DetectionClass":
        if by_l1 and by_l2:
            return cls.BOTH
        if by_l2:
            return cls.ONLY_L2
        if by_l1:
            return cls.ONLY_L1
        return cls.NEITHER


@dataclass(frozen=True)
class Box:
    a_min: float
    a_max: float
    b_min: float
    b_max: float

    def contains(self, a: float, b: float) -> bool:
        return self.a_min <= a <= self.a_max and self.b_min <= b <= self.b_max


@dataclass(frozen=True)
class ScanConfig:
    d: int
    a_steps: int = 201
    b_steps: int = 401
    tol: float = DEFAULT_TOL
    box: Box | None = None
    workers: int = 1
    verify_dense: bool = False
    all_cuts: bool = False

    def validate(self) -> "ScanConfig":
        if self.d < 2:
            raise ValueError(f"d must be at least 2, got {self.d}")
        if self.a_steps < 2 or self.b_steps < 2:
            raise ValueError("a_steps and b_steps must be at least 2")
        if self.tol < 0:
            raise ValueError("tol must be nonnegative")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        return self


@dataclass(frozen=True)
class DetectionRecord:
    a: float
    b: float
    min_eig_red1: float
    min_eig_red2: float
    klass: DetectionClass
    extras: tuple[float, ...] = ()
    dense_mismatch: bool = False


@dataclass
class ScanSummary:
    counts: dict[DetectionClass, int] = field(default_factory=lambda: {c: 0 for c in DetectionClass})
    dense_mismatches: int = 0
    box_points: int = 0
    box_violations: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def grid_points(a_steps: int, b_steps: int) -> Iterable[tuple[int, list[int]]]:
    """Yield ``(i, [j, ...])`` for grid points with ``|b_j| <= a_i``, a-major.

    ``a_i = i / (a_steps - 1)`` and ``b_j = -1 + 2 j / (b_steps - 1)``; the
    validity test is done in integers so no point is lost to rounding.
    """
    am, bm = a_steps - 1, b_steps - 1
    for i in range(a_steps):
        yield i, [j for j in range(b_steps) if abs(2 * j - bm) * am <= i * bm]


def _row(args) -> list[DetectionRecord]:
    i, js, cfg = args
    am, bm = cfg.a_steps - 1, cfg.b_steps - 1
    a = i / am
    out = []
    for j in js:
        b = (2 * j - bm) / bm
        out.append(classify_point(cfg, a, b))
    return out


def classify_point(cfg: ScanConfig, a: float, b: float) -> DetectionRecord:
    p = FamilyParams(cfg.d, a, b)
    m1 = analytic_eigs_red1(p).min()
    m2 = analytic_eigs_red2(p).min()
    klass = DetectionClass.from_flags(m1 < -cfg.tol, m2 < -cfg.tol)
    extras: tuple[float, ...] = ()
    mismatch = False
    if cfg.verify_dense or cfg.all_cuts:
        rho = family_state(p)
        dims = [cfg.d] * 3

        def lam(parties):
            return float(np.linalg.eigvalsh(apply_on_subset(rho, dims, parties))[0])

        if cfg.verify_dense:
            d1, d2 = lam([3]), lam([2, 3])
            dense_class = DetectionClass.from_flags(d1 < -cfg.tol, d2 < -cfg.tol)
            mismatch = abs(d1 - m1) > DENSE_BAND or abs(d2 - m2) > DENSE_BAND
            # Class disagreement only counts when a value sits outside the band around -tol.
            if dense_class is not klass and min(abs(d1 + cfg.tol), abs(d2 + cfg.tol)) > DENSE_BAND:
                mismatch = True
        if cfg.all_cuts:
            extras = tuple(lam(parties) for parties in EXTRA_CUTS.values())
    return DetectionRecord(a, b, m1, m2, klass, extras, mismatch)


def scan(cfg: ScanConfig) -> tuple[list[DetectionRecord], ScanSummary]:
    """Classify every valid grid point; records come back in a-major, b-ascending order."""
    cfg.validate()
    jobs = [(i, js, cfg) for i, js in grid_points(cfg.a_steps, cfg.b_steps) if js]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_row, jobs))
    else:
        rows = [_row(job) for job in jobs]
    records = [r for row in rows for r in row]
    summary = ScanSummary()
    for r in records:
        summary.counts[r.klass] += 1
        summary.dense_mismatches += r.dense_mismatch
        if cfg.box is not None and cfg.box.contains(r.a, r.b):
            summary.box_points += 1
            summary.box_violations += r.min_eig_red2 < -cfg.tol
    return records, summary


def write_csv(fh: TextIO, records: Iterable[DetectionRecord], all_cuts: bool = False) -> None:
    """CSV with shortest round-trip float formatting; byte-stable for a fixed grid."""
    header = ["a", "b", "min_eig_red1", "min_eig_red2", "class"]
    if all_cuts:
        header += list(EXTRA_CUTS)
    fh.write(",".join(header) + "\n")
    for r in records:
        cells = [repr(r.a), repr(r.b), repr(r.min_eig_red1), repr(r.min_eig_red2), r.klass.value]
        cells += [repr(x) for x in r.extras]
        fh.write(",".join(cells) + "\n")
