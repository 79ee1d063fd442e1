"""Pure-Python backend with the same call signatures as ``_ckernels``.

Arrays are converted to nested lists, run through the generic kernels with
either plain complex scalars or counting scalars, and converted back.
``counts`` may be ``None`` here, which skips the counting wrapper.
"""

from __future__ import annotations

import numpy as np

from . import _generic as g
from .errors import NotPositiveDefiniteError, ZeroPivotError
from .numerics import ComplexField, CountingField, OpCounter


def _field(counts):
    if counts is None:
        return ComplexField, None
    counter = OpCounter()
    return CountingField(counter), counter


def _flush(counter, counts):
    if counter is not None:
        counts += np.array(counter.as_tuple(), dtype=np.int64)


def _lists(a, field):
    wrap = field.wrap
    return [[wrap(z) for z in row] for row in a.tolist()]


def _vec(v, field):
    wrap = field.wrap
    return [wrap(z) for z in np.asarray(v).tolist()]


def _array(rows, field):
    unwrap = field.unwrap
    return np.array([[unwrap(z) for z in row] for row in rows], dtype=np.complex128)


def _array1(v, field):
    unwrap = field.unwrap
    return np.array([unwrap(z) for z in v], dtype=np.complex128)


def chol(a, eps, counts):
    field, counter = _field(counts)
    rows = _lists(a, field)
    fail = 0
    try:
        g.chol(rows, field, eps)
    except NotPositiveDefiniteError as exc:
        fail = exc.pivot
    _flush(counter, counts)
    if not fail:
        a[...] = _array(rows, field)
    return fail


def ldl(a, d, eps, counts):
    field, counter = _field(counts)
    rows = _lists(a, field)
    fail = 0
    try:
        piv = g.ldl(rows, field, eps)
    except ZeroPivotError as exc:
        fail = exc.pivot
    _flush(counter, counts)
    if not fail:
        a[...] = _array(rows, field)
        d[...] = _array1(piv, field)
    return fail


def forward(r, y, start, d, counts):
    field, counter = _field(counts)
    dl = None if d is None else _vec(d, field)
    b = g.forward(_lists(r, field), _vec(y, field), field, start=start, d=dl)
    _flush(counter, counts)
    return _array1(b, field)


def backward(r, b, unit, counts):
    field, counter = _field(counts)
    x = g.backward(_lists(r, field), _vec(b, field), field, unit=bool(unit))
    _flush(counter, counts)
    return _array1(x, field)


def tri_inverse(r, counts):
    field, counter = _field(counts)
    m = g.tri_inverse(_lists(r, field), field)
    _flush(counter, counts)
    return _array(m, field)


def inv_eqsolve(r, d, counts):
    field, counter = _field(counts)
    dl = None if d is None else _vec(d, field)
    x = g.inv_eqsolve(_lists(r, field), field, d=dl)
    _flush(counter, counts)
    return _array(x, field)


def inv_trimat(r, counts):
    field, counter = _field(counts)
    x = g.inv_trimat(_lists(r, field), field)
    _flush(counter, counts)
    return _array(x, field)


def shortcut(diag, counts):
    field, counter = _field(counts)
    v = g.shortcut(_vec(diag, field), field)
    _flush(counter, counts)
    return _array1(v, field)


def inv_proposed(r, values, unit, counts):
    field, counter = _field(counts)
    x = g.inv_proposed(_lists(r, field), _vec(values, field), field, unit=bool(unit))
    _flush(counter, counts)
    return _array(x, field)


def gram(dm, counts):
    field, counter = _field(counts)
    a = g.gram(_lists(dm, field), field)
    _flush(counter, counts)
    return _array(a, field)


def adjoint_matmul(dm, x, counts):
    field, counter = _field(counts)
    out = g.adjoint_matmul(_lists(dm, field), _lists(x, field), field)
    _flush(counter, counts)
    return _array(out, field)
