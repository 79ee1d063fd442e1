"""Command-line front end.

Exit codes:

* 0 success
* 2 bad flags, unreadable or malformed input, non-square matrix
* 3 not positive definite, zero pivot, or singular matrix
* 4 input not Hermitian
"""

from __future__ import annotations

import contextlib
import sys

import click

from . import fxp_analysis
from .decompose import cholesky_upper, ldl_upper
from .errors import (
    LinAlgError,
    NotHermitianError,
    NotPositiveDefiniteError,
    SingularMatrixError,
    ZeroPivotError,
)
from .inverse import InverseMethod, invert, invert_nonhermitian
from .matrixio import MatrixFormatError, atomic_write, format_vector, read_matrix, write_matrix
from .numerics import OpCounter, QFormat
from .opcount import CountRow, counts_csv, opcount_table, parse_target

EXIT_PARSE = 2
EXIT_NUMERIC = 3
EXIT_NOT_HERMITIAN = 4

METHOD_NAMES = [m.value for m in InverseMethod]


def _fail(code: int, msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


@contextlib.contextmanager
def _errors_to_exit():
    try:
        yield
    except NotHermitianError as exc:
        _fail(EXIT_NOT_HERMITIAN, str(exc))
    except (NotPositiveDefiniteError, ZeroPivotError, SingularMatrixError) as exc:
        _fail(EXIT_NUMERIC, str(exc))
    except LinAlgError as exc:
        _fail(EXIT_NUMERIC, str(exc))
    except (MatrixFormatError, OSError) as exc:
        _fail(EXIT_PARSE, str(exc))


def _load_square(path):
    m = read_matrix(path)
    if m.shape[0] != m.shape[1]:
        raise MatrixFormatError(f"{path}: matrix must be square, got {m.shape[0]}x{m.shape[1]}")
    return m


def _int_list(ctx, param, value):
    if value is None:
        return None
    try:
        out = [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}") from None
    if not out:
        raise click.BadParameter("list is empty")
    return out


def _size_list(ctx, param, value):
    out = _int_list(ctx, param, value)
    if out is not None and any(n < 2 for n in out):
        raise click.BadParameter("sizes must be >= 2")
    return out


def _method_list(ctx, param, value):
    if value is None:
        return None
    try:
        return [InverseMethod.parse(v.strip()) for v in value.split(",") if v.strip()]
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


def _target_list(ctx, param, value):
    try:
        return [parse_target(v.strip()) for v in value.split(",") if v.strip()]
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


def _qformat_list(ctx, param, value):
    try:
        return [QFormat.parse(v) for v in value.split(",") if v.strip()]
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


def _emit(text: str, output):
    if output is None:
        click.echo(text, nl=False)
    else:
        atomic_write(output, text)


@click.group()
@click.version_option(package_name="cholinv")
def main():
    """Cholesky/LDL matrix inversion, operation counting and fixed-point error analysis."""


@main.command("decompose")
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
@click.option("--method", type=click.Choice(["chol", "ldl"]), default="chol", show_default=True)
@click.option("--output", required=True, type=click.Path(dir_okay=False),
              help="Factor R; with ldl the pivots go to OUTPUT.d, one per line.")
def cmd_decompose(input_path, method, output):
    """Factor a Hermitian positive-definite matrix (A = R*R or A = R*DR)."""
    with _errors_to_exit():
        a = _load_square(input_path)
        if method == "chol":
            write_matrix(output, cholesky_upper(a).R)
        else:
            res = ldl_upper(a)
            write_matrix(output, res.R)
            atomic_write(f"{output}.d", format_vector(res.d))


@main.command("invert")
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
@click.option("--method", type=click.Choice(METHOD_NAMES), default="proposed-chol", show_default=True)
@click.option("--nonhermitian", is_flag=True, help="Invert a general matrix D via D*(DD*)^-1.")
@click.option("--count-ops", is_flag=True, help="Print operation counts as CSV on stdout.")
@click.option("--output", required=True, type=click.Path(dir_okay=False))
def cmd_invert(input_path, method, nonhermitian, count_ops, output):
    """Invert a matrix with one of the five methods."""
    counter = OpCounter() if count_ops else None
    with _errors_to_exit():
        a = _load_square(input_path)
        if nonhermitian:
            x = invert_nonhermitian(a, method, counter)
        else:
            x = invert(a, method, counter)
        write_matrix(output, x)
    if counter is not None:
        click.echo(counts_csv([CountRow(method, a.shape[0], counter, None)]), nl=False)


@main.command("opcount")
@click.option("--methods", default=",".join(METHOD_NAMES), show_default=True, callback=_target_list,
              help="Inversion methods; 'chol' and 'ldl' count the bare factorization.")
@click.option("--sizes", default="64,128,256", show_default=True, callback=_size_list)
@click.option("--seed", default=42, show_default=True, type=int)
@click.option("--output", type=click.Path(dir_okay=False), help="CSV path (default: stdout).")
def cmd_opcount(methods, sizes, seed, output):
    """Count operations per method and size; fit the n^3 coefficient."""
    rows = opcount_table(methods, sizes, seed)
    _emit(counts_csv(rows), output)


@main.command("fxperr")
@click.option("--sizes", default=",".join(map(str, fxp_analysis.DEFAULT_SIZES)), show_default=True,
              callback=_size_list)
@click.option("--methods", default=",".join(METHOD_NAMES), show_default=True, callback=_method_list)
@click.option("--qformat", default="2.13", show_default=True, callback=_qformat_list,
              help="Comma-separated M.F formats (M integer bits, F fractional bits).")
@click.option("--trials", default=fxp_analysis.DEFAULT_TRIALS, show_default=True,
              type=click.IntRange(min=1))
@click.option("--seed", default=fxp_analysis.DEFAULT_SEED, show_default=True, type=int)
@click.option("--delta", default=fxp_analysis.DEFAULT_DELTA, show_default=True,
              type=click.FloatRange(min=0.0, min_open=True))
@click.option("--jobs", default=1, show_default=True, type=click.IntRange(min=1),
              help="Worker processes; output does not depend on this.")
@click.option("--output", type=click.Path(dir_okay=False), help="CSV path (default: stdout).")
def cmd_fxperr(sizes, methods, qformat, trials, seed, delta, jobs, output):
    """Fixed-point error sweep of the inversion methods."""
    config = fxp_analysis.SweepConfig(sizes=sizes, methods=methods, formats=qformat,
                                      trials=trials, seed=seed, delta=delta)
    report = fxp_analysis.run_sweep(config, jobs=jobs)
    _emit(report.to_csv(), output)


if __name__ == "__main__":
    main()
