"""Fixed-point error analysis of the inversion methods.

Each trial draws a Hermitian positive-definite matrix, quantizes it to a
Qm.f format, runs one inversion method entirely in fixed-point arithmetic,
and measures the result in double precision against the double-precision
inverse of the unquantized matrix:

* ``rel_err  = ||X_fxp - X_ref||_F / ||X_ref||_F``
* ``residual = ||A X_fxp - I||_F``

The matrix of trial ``t`` at size ``n`` comes from the stream
``make_prng(seed, n, t)``, so every method and format in a sweep sees the
same matrices and results do not depend on execution order.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _generic as g
from .errors import LinAlgError
from .inverse import ALL_METHODS, InverseMethod, invert_eqsolve
from .numerics import FxpField, QFormat, frobenius_norm, make_prng, random_hermitian_pd

DEFAULT_FORMATS = (QFormat(2, 13),)
DEFAULT_SIZES = (8, 16, 32)
DEFAULT_TRIALS = 100
DEFAULT_SEED = 42
# keeps ||A^-1||_2 <= 2, inside the Q2.f range; 0.1 saturates most inverses
DEFAULT_DELTA = 0.5

ERROR_CSV_HEADER = (
    "n", "method", "int_bits", "frac_bits", "trials", "failures", "mean_rel_err", "mean_residual",
)


class FxpFailure(Exception):
    """A fixed-point run collapsed: zero or saturated pivot, or division by zero."""


@dataclass(frozen=True)
class TrialResult:
    rel_err: float = math.nan
    residual: float = math.nan
    failure: str | None = None

    @property
    def failed(self) -> bool:
        return self.failure is not None


def fxp_invert(a, method: InverseMethod | str, fmt: QFormat) -> np.ndarray:
    """Run ``method`` on ``a`` in Qm.f arithmetic; returns the result as complex128."""
    method = InverseMethod.parse(method)
    fld = FxpField(fmt)
    rows = [[fld.wrap(z) for z in row] for row in np.asarray(a, dtype=np.complex128).tolist()]
    try:
        if method.flavor == "ldl":
            piv = g.ldl(rows, fld, 0.0)
        else:
            g.chol(rows, fld, 0.0)
            piv = [rows[i][i] for i in range(len(rows))]
        for i, p in enumerate(piv):
            if fld.is_saturated(p):
                raise FxpFailure(f"pivot {i + 1} saturated")
        unit = method.flavor == "ldl"
        if method is InverseMethod.TRIMAT:
            x = g.inv_trimat(rows, fld)
        elif method in (InverseMethod.EQSOLVE_CHOL, InverseMethod.EQSOLVE_LDL):
            x = g.inv_eqsolve(rows, fld, d=piv if unit else None)
        else:
            x = g.inv_proposed(rows, g.shortcut(piv, fld), fld, unit=unit)
    except LinAlgError as exc:
        raise FxpFailure(str(exc)) from exc
    except ZeroDivisionError as exc:
        raise FxpFailure("division by zero") from exc
    return np.array([[complex(z) for z in row] for row in x], dtype=np.complex128)


def evaluate_matrix(a, method, fmt: QFormat, x_ref=None) -> TrialResult:
    """Error metrics of one fixed-point inversion of ``a``."""
    a = np.asarray(a, dtype=np.complex128)
    if x_ref is None:
        x_ref = invert_eqsolve(a, "chol")
    try:
        x = fxp_invert(a, method, fmt)
    except FxpFailure as exc:
        return TrialResult(failure=str(exc))
    rel = frobenius_norm(x - x_ref) / frobenius_norm(x_ref)
    res = frobenius_norm(a @ x - np.eye(a.shape[0]))
    return TrialResult(rel, res)


def trial_matrix(n: int, fmt: QFormat, prng: np.random.Generator, delta: float = DEFAULT_DELTA) -> np.ndarray:
    return random_hermitian_pd(n, prng, delta, fmt)


def run_trial(n: int, method, fmt: QFormat, prng: np.random.Generator,
              delta: float = DEFAULT_DELTA) -> TrialResult:
    """Draw one matrix from ``prng`` and evaluate ``method`` on it in ``fmt``."""
    a = trial_matrix(n, fmt, prng, delta)
    return evaluate_matrix(a, method, fmt)


@dataclass
class SweepConfig:
    sizes: tuple[int, ...] = DEFAULT_SIZES
    methods: tuple[InverseMethod, ...] = ALL_METHODS
    formats: tuple[QFormat, ...] = DEFAULT_FORMATS
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        self.sizes = tuple(int(n) for n in self.sizes)
        self.methods = tuple(InverseMethod.parse(m) for m in self.methods)
        self.formats = tuple(self.formats)
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(n < 2 for n in self.sizes):
            raise ValueError("all sizes must be >= 2")
        if not self.sizes or not self.methods or not self.formats:
            raise ValueError("sizes, methods and formats must be non-empty")
        if not self.delta > 0:
            raise ValueError("delta must be positive")

    def cells(self) -> list[tuple[int, InverseMethod, QFormat]]:
        """Grid cells in report order: (n, method name, frac_bits, int_bits)."""
        grid = [(n, m, f) for n in dict.fromkeys(self.sizes)
                for m in dict.fromkeys(self.methods)
                for f in dict.fromkeys(self.formats)]
        return sorted(grid, key=lambda c: (c[0], c[1].value, c[2].frac_bits, c[2].int_bits))


@dataclass(frozen=True)
class ErrorRow:
    n: int
    method: InverseMethod
    fmt: QFormat
    trials: int
    failures: int
    mean_rel_err: float
    mean_residual: float


@dataclass
class ErrorReport:
    rows: list[ErrorRow] = field(default_factory=list)

    def lookup(self, n: int, method, fmt: QFormat) -> ErrorRow:
        method = InverseMethod.parse(method)
        for row in self.rows:
            if (row.n, row.method, row.fmt) == (n, method, fmt):
                return row
        raise KeyError((n, method, fmt))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(ERROR_CSV_HEADER)
        for r in self.rows:
            w.writerow([r.n, r.method.value, r.fmt.int_bits, r.fmt.frac_bits, r.trials,
                        r.failures, repr(r.mean_rel_err), repr(r.mean_residual)])
        return buf.getvalue()


def _run_cell(args) -> ErrorRow:
    n, method, fmt, trials, seed, delta = args
    rel_sum = res_sum = 0.0
    ok = 0
    for t in range(trials):
        result = run_trial(n, method, fmt, make_prng(seed, n, t), delta)
        if result.failed:
            continue
        rel_sum += result.rel_err
        res_sum += result.residual
        ok += 1
    mean_rel = rel_sum / ok if ok else math.nan
    mean_res = res_sum / ok if ok else math.nan
    return ErrorRow(n, method, fmt, trials, trials - ok, mean_rel, mean_res)


def run_sweep(config: SweepConfig, jobs: int = 1) -> ErrorReport:
    """Evaluate every (size, method, format) cell of ``config``.

    ``jobs > 1`` spreads cells over worker processes; the report is identical
    for any job count.
    """
    work = [(n, m, f, config.trials, config.seed, config.delta) for n, m, f in config.cells()]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_cell, work))
    else:
        rows = [_run_cell(w) for w in work]
    return ErrorReport(rows)


__all__ = [
    "DEFAULT_DELTA",
    "DEFAULT_FORMATS",
    "DEFAULT_SEED",
    "DEFAULT_SIZES",
    "DEFAULT_TRIALS",
    "ERROR_CSV_HEADER",
    "ErrorReport",
    "ErrorRow",
    "FxpFailure",
    "SweepConfig",
    "TrialResult",
    "evaluate_matrix",
    "fxp_invert",
    "run_sweep",
    "run_trial",
    "trial_matrix",
]
