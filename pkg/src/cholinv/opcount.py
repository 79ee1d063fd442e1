"""Operation-count measurements and cubic-coefficient fits."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .decompose import cholesky_upper, ldl_upper
from .inverse import InverseMethod, invert
from .numerics import OpCounter, make_prng, random_hermitian_pd

# bare factorizations, reported next to the inversion methods
DECOMPOSITIONS = ("chol", "ldl")

COUNTS_CSV_HEADER = ("method", "n", "cmul", "cdiv", "cadd", "csqrt", "mul_ops", "fitted_c")

# stream key separating op-count matrices from the fixed-point sweep streams
_OPCOUNT_STREAM = 1


def parse_target(name: str) -> str:
    if name in DECOMPOSITIONS:
        return name
    return InverseMethod.parse(name).value


def count_ops(target: str, n: int, seed: int = 42) -> OpCounter:
    """Counts for one run of ``target`` (a method name, ``chol`` or ``ldl``)
    on a random ``n x n`` Hermitian positive-definite matrix."""
    target = parse_target(target)
    a = random_hermitian_pd(n, make_prng(seed, _OPCOUNT_STREAM, n))
    counter = OpCounter()
    if target == "chol":
        cholesky_upper(a, counter)
    elif target == "ldl":
        ldl_upper(a, counter)
    else:
        invert(a, target, counter)
    return counter


def fit_cubic(sizes, counts) -> float | None:
    """Leading coefficient ``c`` of ``count ~ c n^3 + b n^2 + a n``.

    Uses as many terms (highest powers first) as there are distinct sizes,
    up to three.  Returns None for a single size.
    """
    pairs = dict(zip((int(n) for n in sizes), (float(c) for c in counts)))
    if len(pairs) < 2:
        return None
    ns = np.array(sorted(pairs), dtype=float)
    ys = np.array([pairs[int(n)] for n in ns])
    k = min(3, len(ns))
    design = np.stack([ns ** (3 - p) for p in range(k)], axis=1)
    coef, *_ = np.linalg.lstsq(design, ys, rcond=None)
    return float(coef[0])


@dataclass(frozen=True)
class CountRow:
    method: str
    n: int
    counter: OpCounter
    fitted_c: float | None


def opcount_table(targets, sizes, seed: int = 42) -> list[CountRow]:
    """Counts for every (target, size), sorted by (method, n), with per-method fits."""
    targets = sorted(dict.fromkeys(parse_target(t) for t in targets))
    sizes = sorted(dict.fromkeys(int(n) for n in sizes))
    rows = []
    for t in targets:
        counters = [count_ops(t, n, seed) for n in sizes]
        c = fit_cubic(sizes, [k.mul_ops for k in counters])
        rows.extend(CountRow(t, n, k, c) for n, k in zip(sizes, counters))
    return rows


def counts_csv(rows, header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(COUNTS_CSV_HEADER)
    for r in rows:
        k = r.counter
        w.writerow([r.method, r.n, k.cmul, k.cdiv, k.cadd, k.csqrt, k.mul_ops,
                    "" if r.fitted_c is None else repr(r.fitted_c)])
    return buf.getvalue()
