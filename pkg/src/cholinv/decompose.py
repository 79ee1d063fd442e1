"""Cholesky and LDL factorizations of Hermitian positive-definite matrices.

Upper-triangular convention: ``A = R* R`` and ``A = R* diag(d) R``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import NotHermitianError, NotPositiveDefiniteError, ZeroPivotError
from .numerics import OpCounter, as_matrix

HERMITIAN_RTOL = 1e-12
PIVOT_RTOL = 1e-13


@dataclass
class CholResult:
    """Upper-triangular Cholesky factor ``R`` (real positive diagonal)."""

    R: np.ndarray

    @property
    def n(self) -> int:
        return self.R.shape[0]

    def pivots(self) -> np.ndarray:
        return self.R.diagonal().real.copy()

    def reconstruct(self) -> np.ndarray:
        return self.R.conj().T @ self.R


@dataclass
class LdlResult:
    """Unit upper-triangular ``R`` and real pivots ``d``."""

    R: np.ndarray
    d: np.ndarray

    @property
    def n(self) -> int:
        return self.R.shape[0]

    def pivots(self) -> np.ndarray:
        return self.d.copy()

    def reconstruct(self) -> np.ndarray:
        return self.R.conj().T @ (self.d[:, None] * self.R)


def check_square(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")


def check_hermitian(a: np.ndarray, rtol: float = HERMITIAN_RTOL) -> None:
    """Raise NotHermitianError unless ``|a - a*| <= rtol * max|a|`` entrywise."""
    check_square(a)
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    dev = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if dev > rtol * scale:
        raise NotHermitianError(dev)


def pivot_threshold(a: np.ndarray) -> float:
    return PIVOT_RTOL * float(np.max(np.abs(a.diagonal())))


def _prepare(a, overwrite: bool) -> np.ndarray:
    if overwrite:
        if not (isinstance(a, np.ndarray) and a.dtype == np.complex128 and a.flags.c_contiguous):
            raise TypeError("overwrite=True needs a C-contiguous complex128 array")
        work = a
    else:
        work = as_matrix(a)
    check_hermitian(work)
    return work


def cholesky_upper(a, counter: OpCounter | None = None, *, overwrite: bool = False) -> CholResult:
    """Cholesky factor ``R`` with ``A = R* R``.

    With ``overwrite=True`` the factor is written into ``a`` itself (the
    strict lower triangle is zeroed) and the returned ``R`` is ``a``.

    Raises
    ------
    NotHermitianError
        If ``a`` is not Hermitian to a relative tolerance of 1e-12.
    NotPositiveDefiniteError
        If a radicand falls to ``1e-13 * max|a_jj|`` or below.
    """
    work = _prepare(a, overwrite)
    eps = pivot_threshold(work)
    k = _backend.kernels()
    counts = _backend.new_counts(counter)
    fail = k.chol(work, eps, counts)
    _backend.flush(counts, counter)
    if fail:
        raise NotPositiveDefiniteError(fail)
    return CholResult(work)


def ldl_upper(a, counter: OpCounter | None = None, *, overwrite: bool = False) -> LdlResult:
    """Square-root free factorization ``A = R* diag(d) R`` with unit-diagonal ``R``."""
    work = _prepare(a, overwrite)
    eps = pivot_threshold(work)
    d = np.zeros(work.shape[0], dtype=np.complex128)
    k = _backend.kernels()
    counts = _backend.new_counts(counter)
    fail = k.ldl(work, d, eps, counts)
    _backend.flush(counts, counter)
    if fail:
        raise ZeroPivotError(fail)
    return LdlResult(work, d.real.copy())
