"""Hermitian positive-definite inversion: two baselines and the shortcut method.

=================  ====================================================
method             cost in complex multiplies + divides (leading term)
=================  ====================================================
``eqsolve-chol``   5/6 n^3  factor, then ``A x_i = e_i`` per column
``eqsolve-ldl``    5/6 n^3  same with the LDL factor
``trimat``         2/3 n^3  ``R^-1`` then ``X = R^-1 R^-*``
``proposed-chol``  1/2 n^3  backward substitution against ``S``
``proposed-ldl``   1/2 n^3  same with ``S~`` and unit ``R``
=================  ====================================================

The proposed method never solves ``R* B = I``: the upper triangle of ``B``
is already known to be ``S = diag(1/r_ii)`` (``diag(1/d_i)`` for LDL), so
``R X = S`` is solved directly for the upper triangle of ``X``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _backend
from .decompose import CholResult, LdlResult, check_square, cholesky_upper, ldl_upper
from .errors import LinAlgError, SingularMatrixError
from .numerics import OpCounter, as_matrix


class InverseMethod(enum.Enum):
    EQSOLVE_CHOL = "eqsolve-chol"
    EQSOLVE_LDL = "eqsolve-ldl"
    TRIMAT = "trimat"
    PROPOSED_CHOL = "proposed-chol"
    PROPOSED_LDL = "proposed-ldl"

    @property
    def flavor(self) -> str:
        return "ldl" if self.value.endswith("ldl") else "chol"

    @classmethod
    def parse(cls, name: str | InverseMethod) -> InverseMethod:
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown method {name!r} (choose from {choices})") from None

    def __str__(self) -> str:
        return self.value


ALL_METHODS = tuple(InverseMethod)


@dataclass
class ShortcutDiagonal:
    """Diagonal of ``S`` (``1/r_ii``) or ``S~`` (``1/d_i``); off-diagonals are zero."""

    values: np.ndarray

    def as_matrix(self) -> np.ndarray:
        return np.diag(self.values).astype(np.complex128)


def _check_flavor(flavor: str) -> None:
    if flavor not in ("chol", "ldl"):
        raise ValueError(f"flavor must be 'chol' or 'ldl', got {flavor!r}")


def _factor(a, flavor: str, counter):
    _check_flavor(flavor)
    if flavor == "chol":
        return cholesky_upper(a, counter)
    return ldl_upper(a, counter)


def _pivots_c(factor) -> np.ndarray:
    if isinstance(factor, LdlResult):
        return factor.d.astype(np.complex128)
    return factor.R.diagonal().copy()


def invert_eqsolve(a, flavor: str = "chol", counter: OpCounter | None = None) -> np.ndarray:
    """Inverse by solving ``A x_i = e_i`` with the chosen factorization."""
    factor = _factor(a, flavor, counter)
    d = _pivots_c(factor) if flavor == "ldl" else None
    counts = _backend.new_counts(counter)
    x = _backend.kernels().inv_eqsolve(factor.R, d, counts)
    _backend.flush(counts, counter)
    return x


def invert_trimat(a, counter: OpCounter | None = None) -> np.ndarray:
    """Inverse as ``M M*`` with ``M = R^-1`` from the Cholesky factor."""
    factor = cholesky_upper(a, counter)
    counts = _backend.new_counts(counter)
    x = _backend.kernels().inv_trimat(factor.R, counts)
    _backend.flush(counts, counter)
    return x


def build_shortcut(factor: CholResult | LdlResult, counter: OpCounter | None = None) -> ShortcutDiagonal:
    """Reciprocal pivots: ``1/r_ii`` for Cholesky, ``1/d_i`` for LDL."""
    counts = _backend.new_counts(counter)
    values = _backend.kernels().shortcut(_pivots_c(factor), counts)
    _backend.flush(counts, counter)
    return ShortcutDiagonal(values.real.copy())


def invert_proposed(a, flavor: str = "chol", counter: OpCounter | None = None) -> np.ndarray:
    """Inverse by backward substitution ``R X = S`` only.

    Columns run from last to first; inside a column, rows run upward from
    the diagonal.  Entries below the diagonal of the current column are
    taken as conjugates of already finished columns.
    """
    factor = _factor(a, flavor, counter)
    shortcut = build_shortcut(factor, counter)
    counts = _backend.new_counts(counter)
    x = _backend.kernels().inv_proposed(
        factor.R, shortcut.values.astype(np.complex128), flavor == "ldl", counts
    )
    _backend.flush(counts, counter)
    return x


def invert(a, method: InverseMethod | str = InverseMethod.PROPOSED_CHOL,
           counter: OpCounter | None = None) -> np.ndarray:
    """Invert a Hermitian positive-definite matrix with ``method``."""
    method = InverseMethod.parse(method)
    if method is InverseMethod.TRIMAT:
        return invert_trimat(a, counter)
    if method in (InverseMethod.EQSOLVE_CHOL, InverseMethod.EQSOLVE_LDL):
        return invert_eqsolve(a, method.flavor, counter)
    return invert_proposed(a, method.flavor, counter)


def invert_nonhermitian(dm, method: InverseMethod | str = InverseMethod.PROPOSED_CHOL,
                        counter: OpCounter | None = None) -> np.ndarray:
    """Invert an arbitrary nonsingular square ``D`` via ``D^-1 = D* (D D*)^-1``."""
    dm = as_matrix(dm)
    check_square(dm)
    k = _backend.kernels()
    counts = _backend.new_counts(counter)
    a = k.gram(dm, counts)
    _backend.flush(counts, counter)
    try:
        x = invert(a, method, counter)
    except LinAlgError as exc:
        raise SingularMatrixError(exc) from exc
    counts = _backend.new_counts(counter)
    out = k.adjoint_matmul(dm, x, counts)
    _backend.flush(counts, counter)
    return out
