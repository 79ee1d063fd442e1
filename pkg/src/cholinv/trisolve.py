"""Triangular solves and the column-wise triangular inverse.

Only the relevant triangle of each input is read; entries on the other side
of the diagonal are ignored.
"""

from __future__ import annotations

import numpy as np

from . import _backend
from .decompose import PIVOT_RTOL, check_square
from .errors import SingularDiagonalError, ZeroPivotError
from .numerics import OpCounter, as_matrix


def _column(y, n: int) -> np.ndarray:
    v = np.array(y, dtype=np.complex128).reshape(-1)
    if v.shape[0] != n:
        raise ValueError(f"right-hand side has length {v.shape[0]}, expected {n}")
    return np.ascontiguousarray(v)


def _check_diagonal(diag: np.ndarray, exc=SingularDiagonalError) -> None:
    mags = np.abs(diag)
    tol = PIVOT_RTOL * float(mags.max())
    bad = np.flatnonzero(mags <= tol)
    if bad.size:
        raise exc(int(bad[0]) + 1)


def solve_lower(l, y, counter: OpCounter | None = None) -> np.ndarray:
    """Forward substitution for ``L b = y``."""
    l = as_matrix(l)
    check_square(l)
    _check_diagonal(l.diagonal())
    # the kernel solves R* b = y; R = L* carries the same entries
    r = np.ascontiguousarray(l.conj().T)
    counts = _backend.new_counts(counter)
    b = _backend.kernels().forward(r, _column(y, l.shape[0]), 0, None, counts)
    _backend.flush(counts, counter)
    return b


def solve_upper(r, b, counter: OpCounter | None = None) -> np.ndarray:
    """Backward substitution for ``R x = b``."""
    r = as_matrix(r)
    check_square(r)
    _check_diagonal(r.diagonal())
    counts = _backend.new_counts(counter)
    x = _backend.kernels().backward(r, _column(b, r.shape[0]), False, counts)
    _backend.flush(counts, counter)
    return x


def solve_ldl_lower(r, d, y, counter: OpCounter | None = None) -> np.ndarray:
    """Solve ``R* diag(d) b = y`` for unit upper-triangular ``R``.

    Unit-lower forward substitution followed by one division per row.
    """
    r = as_matrix(r)
    check_square(r)
    d = np.asarray(d, dtype=np.complex128).reshape(-1)
    if d.shape[0] != r.shape[0]:
        raise ValueError("d must have one entry per row of R")
    _check_diagonal(d, ZeroPivotError)
    counts = _backend.new_counts(counter)
    b = _backend.kernels().forward(r, _column(y, r.shape[0]), 0, np.ascontiguousarray(d), counts)
    _backend.flush(counts, counter)
    return b


def triangular_inverse(r, counter: OpCounter | None = None) -> np.ndarray:
    """``R^-1`` for upper-triangular ``R``, solving ``R m_i = e_i`` per column.

    The result has exact zeros below the diagonal.
    """
    r = as_matrix(r)
    check_square(r)
    _check_diagonal(r.diagonal())
    counts = _backend.new_counts(counter)
    m = _backend.kernels().tri_inverse(r, counts)
    _backend.flush(counts, counter)
    return m
