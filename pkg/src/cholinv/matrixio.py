"""Plain-text complex matrix files.

Grammar::

    file    := { comment } header { comment | row }
    header  := INT WS INT             rows and columns
    row     := token { WS token }     exactly <columns> tokens
    token   := FLOAT "," FLOAT        real part, imaginary part; no spaces
    comment := "#" anything

Blank lines are ignored.  Writers emit 17 significant digits, so every double
survives a write/read round trip exactly.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np


class MatrixFormatError(ValueError):
    pass


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _token(tok: str, lineno: int) -> complex:
    re_s, sep, im_s = tok.partition(",")
    if not sep or "," in im_s:
        raise MatrixFormatError(f"line {lineno}: expected 're,im', got {tok!r}")
    try:
        return complex(float(re_s), float(im_s))
    except ValueError:
        raise MatrixFormatError(f"line {lineno}: bad number in {tok!r}") from None


def parse_matrix(text: str) -> np.ndarray:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise MatrixFormatError("empty matrix file") from None
    parts = header.split()
    try:
        rows, cols = (int(p) for p in parts)
    except ValueError:
        raise MatrixFormatError(f"line {lineno}: header must be 'rows cols', got {header!r}") from None
    if rows < 1 or cols < 1:
        raise MatrixFormatError(f"line {lineno}: dimensions must be positive")
    out = np.zeros((rows, cols), dtype=np.complex128)
    i = 0
    for lineno, line in lines:
        if i == rows:
            raise MatrixFormatError(f"line {lineno}: more than {rows} rows")
        toks = line.split()
        if len(toks) != cols:
            raise MatrixFormatError(f"line {lineno}: expected {cols} entries, found {len(toks)}")
        out[i] = [_token(t, lineno) for t in toks]
        i += 1
    if i != rows:
        raise MatrixFormatError(f"expected {rows} rows, found {i}")
    return out


def read_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


def format_matrix(m) -> str:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError("format_matrix needs a 2-D array")
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    for row in m:
        lines.append(" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in row))
    return "\n".join(lines) + "\n"


def format_vector(v) -> str:
    return "".join(f"{x:.17g}\n" for x in np.asarray(v, dtype=float))


def atomic_write(path, text: str) -> None:
    """Write via a temporary file in the target directory and rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_matrix(path, m) -> None:
    atomic_write(path, format_matrix(m))
