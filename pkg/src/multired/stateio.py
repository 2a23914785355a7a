"""Plain-text state files and marginal-set streams.

A state file is::

    dims: 2 2
    0.5+0j 0j 0j 0.5+0j
    ...

one matrix row per line, entries in Python ``complex`` literal syntax.
A marginal stream is a sequence of such blocks, each preceded by a
``subset: i j ...`` line, optionally headed by ``n: <parties>``.
"""

from __future__ import annotations

from math import prod
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from multired.errors import ShapeError


class StateFormatError(ValueError):
    """Malformed state or marginal file."""


def format_complex(z: complex) -> str:
    """Shortest round-trip text for ``z`` that ``complex()`` parses back."""
    re, im = float(z.real), float(z.imag)
    sign = "-" if np.signbit(im) else "+"
    return f"{re!r}{sign}{abs(im)!r}j"


def _parse_dims(line: str) -> list[int]:
    key, _, rest = line.partition(":")
    if key.strip() != "dims":
        raise StateFormatError(f"expected 'dims:' line, got {line!r}")
    try:
        dims = [int(tok) for tok in rest.split()]
    except ValueError as exc:
        raise StateFormatError(f"bad dims line {line!r}") from exc
    if not dims or any(d < 1 for d in dims):
        raise StateFormatError(f"bad dims line {line!r}")
    return dims


def _parse_block(lines: Sequence[str]) -> tuple[np.ndarray, list[int]]:
    if not lines:
        raise StateFormatError("empty state block")
    dims = _parse_dims(lines[0])
    try:
        rows = [[complex(tok) for tok in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise StateFormatError(f"unparseable matrix entry: {exc}") from exc
    side = len(rows)
    if any(len(r) != side for r in rows):
        raise ShapeError("matrix is not square")
    if side != prod(dims):
        raise ShapeError(f"{side}x{side} matrix does not match dims {tuple(dims)}")
    return np.array(rows, dtype=complex).reshape(side, side), dims


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def parse_state(text: str) -> tuple[np.ndarray, list[int]]:
    return _parse_block(_content_lines(text))


def read_state(path: str | Path) -> tuple[np.ndarray, list[int]]:
    return parse_state(Path(path).read_text(encoding="utf-8"))


def write_state(fh: TextIO, op: np.ndarray, dims: Sequence[int]) -> None:
    fh.write("dims: " + " ".join(str(int(d)) for d in dims) + "\n")
    for row in np.asarray(op, dtype=complex):
        fh.write(" ".join(format_complex(z) for z in row) + "\n")


def save_state(path: str | Path, op: np.ndarray, dims: Sequence[int]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_state(fh, op, dims)


def parse_marginals(text: str) -> tuple[int | None, dict[tuple[int, ...], tuple[np.ndarray, list[int]]]]:
    """Parse a marginal stream into ``(declared_n, {subset: (matrix, dims)})``."""
    declared = None
    blocks: dict[tuple[int, ...], list[str]] = {}
    current: list[str] | None = None
    for line in _content_lines(text):
        key, _, rest = line.partition(":")
        key = key.strip()
        if key == "n" and current is None and declared is None:
            declared = int(rest)
        elif key == "subset":
            subset = tuple(sorted(int(tok) for tok in rest.split()))
            if subset in blocks:
                raise StateFormatError(f"duplicate subset {subset}")
            current = blocks[subset] = []
        elif current is None:
            raise StateFormatError(f"data before first 'subset:' line: {line!r}")
        else:
            current.append(line)
    return declared, {s: _parse_block(lines) for s, lines in blocks.items()}


def read_marginals(path: str | Path):
    """Read a marginal stream from a file, or from every ``*.txt`` file in a directory."""
    path = Path(path)
    if path.is_dir():
        text = "\n".join(p.read_text(encoding="utf-8") for p in sorted(path.glob("*.txt")))
    else:
        text = path.read_text(encoding="utf-8")
    return parse_marginals(text)


def write_marginals(
    fh: TextIO,
    marginals: Iterable[tuple[Sequence[int], np.ndarray, Sequence[int]]],
    n: int | None = None,
) -> None:
    if n is not None:
        fh.write(f"n: {n}\n")
    for subset, op, dims in marginals:
        fh.write("subset: " + " ".join(str(i) for i in subset) + "\n")
        write_state(fh, op, dims)
