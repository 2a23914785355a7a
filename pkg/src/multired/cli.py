"""Command-line entry point: ``multired scan | check | check-marginals``.

Exit codes for ``check`` and ``check-marginals``: 0 nothing detected,
1 something detected, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from itertools import combinations
from typing import Sequence

from multired.errors import IncompleteInputError, ShapeError, UnsupportedParityError
from multired.reduction import MarginalSet, detect, marginal_compatibility_check
from multired.scan import Box, ScanConfig, scan, write_csv
from multired.stateio import StateFormatError, read_marginals, read_state
from multired.tensor import DEFAULT_TOL, check_density

EXIT_CLEAN, EXIT_DETECTED, EXIT_INPUT = 0, 1, 2


def _subset(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad subset {text!r}") from exc


def _box(text: str) -> Box:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("box needs amin,amax,bmin,bmax")
    try:
        return Box(*(float(p) for p in parts))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad box {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multired", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="classify the (a, b) Werner slice by which reduction maps detect it")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a-steps", type=int, default=201)
    p.add_argument("--b-steps", type=int, default=401)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--verify-dense", action="store_true", help="cross-check every point with a dense eigensolver")
    p.add_argument("--box", type=_box, help="amin,amax,bmin,bmax of a region the two-party map must not detect")
    p.add_argument("--all-cuts", action="store_true", help="also report the other placements of both maps")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub.add_parser("check", help="run reduction-map tests on a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--subset", type=_subset, action="append", help="comma-separated parties, repeatable")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("check-marginals", help="test whether marginals can come from one global state")
    p.add_argument("--dir", required=True, help="directory of *.txt blocks or a single marginal file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    return parser


def _err(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def run_scan(args) -> int:
    cfg = ScanConfig(
        d=args.d,
        a_steps=args.a_steps,
        b_steps=args.b_steps,
        tol=args.tol,
        box=args.box,
        workers=args.workers,
        verify_dense=args.verify_dense,
        all_cuts=args.all_cuts,
    )
    try:
        cfg.validate()
    except ValueError as exc:
        return _err(str(exc))
    records, summary = scan(cfg)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        write_csv(fh, records, cfg.all_cuts)
    for klass, count in summary.counts.items():
        print(f"{klass.value}: {count}")
    print(f"points: {summary.total}")
    status = EXIT_CLEAN
    if cfg.verify_dense:
        print(f"dense mismatches: {summary.dense_mismatches}")
        status = EXIT_DETECTED if summary.dense_mismatches else status
    if cfg.box is not None:
        print(f"box points: {summary.box_points}, detected by two-party map: {summary.box_violations}")
        status = EXIT_DETECTED if summary.box_violations else status
    return status


def run_check(args) -> int:
    try:
        rho, dims = read_state(args.state)
        rho = check_density(rho, dims, args.tol)
    except (OSError, StateFormatError, ShapeError, ValueError) as exc:
        return _err(str(exc))
    n = len(dims)
    subsets = args.subset or [c for k in range(1, n + 1) for c in combinations(range(1, n + 1), k)]
    any_detected = False
    for subset in subsets:
        try:
            res = detect(rho, dims, subset, args.tol)
        except ValueError as exc:
            return _err(str(exc))
        any_detected |= res.detected
        label = ",".join(map(str, res.subset))
        print(f"subset={label} min_eig={res.min_eigenvalue!r} detected={str(res.detected).lower()}")
    return EXIT_DETECTED if any_detected else EXIT_CLEAN


def run_check_marginals(args) -> int:
    try:
        n, blocks = read_marginals(args.dir)
        ms = MarginalSet.from_blocks(blocks, n)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = marginal_compatibility_check(ms, args.tol)
    except UnsupportedParityError as exc:
        return _err(f"{exc}; the alternating-sum test only applies to odd n")
    except (OSError, StateFormatError, ShapeError, IncompleteInputError, ValueError) as exc:
        return _err(str(exc))
    for note in res.warnings:
        print(f"warning: {note}")
    verdict = "incompatible" if res.detected else "compatible"
    print(f"n={ms.n} min_eig={res.min_eigenvalue!r} verdict={verdict}")
    return EXIT_DETECTED if res.detected else EXIT_CLEAN


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"scan": run_scan, "check": run_check, "check-marginals": run_check_marginals}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
