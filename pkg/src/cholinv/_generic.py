"""Scalar-generic kernels on list-of-lists matrices.

These are the reference definitions of every algorithm in the package.  They
run unchanged on plain ``complex``, :class:`~cholinv.numerics.Counted` and
:class:`~cholinv.numerics.FxpComplex` scalars; the compiled extension mirrors
them operation for operation on complex128 arrays.

Indices are 0-based internally.  Factors use the upper-triangular convention
``A = R* R`` (Cholesky) and ``A = R* D R`` (LDL, unit diagonal R).  Every
kernel takes a ``field`` (see :mod:`cholinv.numerics`) for constants,
square roots and real-part extraction.
"""

from __future__ import annotations

from .errors import NotPositiveDefiniteError, ZeroPivotError


def chol(a, field, eps: float):
    """In-place Cholesky: upper triangle of ``a`` becomes R, lower is zeroed."""
    n = len(a)
    zero = field.zero
    for i in range(n):
        ri = a[i]
        s = ri[i]
        for k in range(i):
            rki = a[k][i]
            s = s - rki.conjugate() * rki
        s = field.realify(s)
        if field.real(s) <= eps:
            raise NotPositiveDefiniteError(i + 1)
        rii = field.sqrt(s)
        ri[i] = rii
        for j in range(i + 1, n):
            s = ri[j]
            for k in range(i):
                rk = a[k]
                s = s - rk[i].conjugate() * rk[j]
            ri[j] = s / rii
        for j in range(i):
            ri[j] = zero
    return a


def ldl(a, field, eps: float):
    """In-place LDL: ``a`` becomes unit-upper R; returns the pivots d.

    Row ``i`` first forms ``w_k = conj(r_ki) d_k`` once, so each entry costs a
    single multiply per inner term.
    """
    n = len(a)
    zero, one = field.zero, field.one
    d = [zero] * n
    for i in range(n):
        ri = a[i]
        w = [a[k][i].conjugate() * d[k] for k in range(i)]
        s = ri[i]
        for k in range(i):
            s = s - w[k] * a[k][i]
        s = field.realify(s)
        if abs(field.real(s)) <= eps:
            raise ZeroPivotError(i + 1)
        d[i] = s
        for j in range(i + 1, n):
            s = ri[j]
            for k in range(i):
                s = s - w[k] * a[k][j]
            ri[j] = s / d[i]
        ri[i] = one
        for j in range(i):
            ri[j] = zero
    return d


def forward(r, y, field, start: int = 0, d=None):
    """Solve ``R* b = y`` (or ``R* D b = y`` when ``d`` is given, R unit).

    Entries ``y[:start]`` are known zeros, so ``b[:start]`` is zero and the
    inner products start at ``start``.
    """
    n = len(r)
    b = [field.zero] * n
    for k in range(start, n):
        s = y[k]
        for m in range(start, k):
            s = s - r[m][k].conjugate() * b[m]
        b[k] = s if d is not None else s / r[k][k].conjugate()
    if d is not None:
        for k in range(start, n):
            b[k] = b[k] / d[k]
    return b


def backward(r, b, field, unit: bool = False):
    """Solve ``R x = b`` bottom-up over all rows."""
    n = len(r)
    x = [field.zero] * n
    for k in range(n - 1, -1, -1):
        rk = r[k]
        s = b[k]
        for m in range(k + 1, n):
            s = s - rk[m] * x[m]
        x[k] = s if unit else s / rk[k]
    return x


def tri_inverse(r, field):
    """Upper-triangular inverse, column i from ``R m_i = e_i``.

    Rows below i are structurally zero and never solved; each solved row
    takes the inner product over its full trailing segment.
    """
    n = len(r)
    zero, one = field.zero, field.one
    m = [[zero] * n for _ in range(n)]
    for i in range(n):
        col = [zero] * n
        col[i] = one / r[i][i]
        for k in range(i - 1, -1, -1):
            rk = r[k]
            s = zero
            for p in range(k + 1, n):
                s = s - rk[p] * col[p]
            col[k] = s / rk[k]
        for k in range(i + 1):
            m[k][i] = col[k]
    return m


def mirror(x, field):
    """Conjugate the strict upper triangle into the lower; real diagonal."""
    n = len(x)
    for i in range(n):
        xi = x[i]
        xi[i] = field.realify(xi[i])
        for j in range(i + 1, n):
            x[j][i] = xi[j].conjugate()
    return x


def inv_eqsolve(r, field, d=None):
    """Inverse from a factor by solving ``A x_i = e_i`` column by column.

    Columns are taken in natural order, so the backward solve must produce
    the whole column; only the upper part ``x_ki, k <= i`` is kept and the
    rest comes from the conjugate mirror.
    """
    n = len(r)
    zero, one = field.zero, field.one
    x = [[zero] * n for _ in range(n)]
    unit = d is not None
    for i in range(n):
        e = [zero] * n
        e[i] = one
        b = forward(r, e, field, start=i, d=d)
        col = backward(r, b, field, unit=unit)
        for k in range(i + 1):
            x[k][i] = col[k]
    return mirror(x, field)


def inv_trimat(r, field):
    """``X = M M*`` with ``M = R^-1``; only the upper half of X is formed."""
    n = len(r)
    m = tri_inverse(r, field)
    zero = field.zero
    x = [[zero] * n for _ in range(n)]
    for i in range(n):
        mi = m[i]
        for j in range(i, n):
            mj = m[j]
            s = zero
            for k in range(j, n):
                s = s + mi[k] * mj[k].conjugate()
            x[i][j] = s
    return mirror(x, field)


def shortcut(diag, field):
    """Reciprocals of the pivots: the nonzero part of S (or S-tilde)."""
    one = field.one
    return [one / p for p in diag]


def inv_proposed(r, values, field, unit: bool = False):
    """Inverse by backward substitution only, against the shortcut matrix.

    Column j is solved for rows ``j, j-1, ..., 0``.  Entries of column j
    below the diagonal are read as conjugates of row j, which is complete
    because columns are processed from last to first.
    """
    n = len(r)
    zero = field.zero
    x = [[zero] * n for _ in range(n)]
    for j in range(n - 1, -1, -1):
        xj = x[j]
        col = [zero] * n
        for p in range(j + 1, n):
            col[p] = xj[p].conjugate()
        for k in range(j, -1, -1):
            rk = r[k]
            s = values[j] if k == j else zero
            for p in range(k + 1, n):
                s = s - rk[p] * col[p]
            col[k] = s if unit else s / rk[k]
            x[k][j] = col[k]
    return mirror(x, field)


def gram(dm, field):
    """Hermitian ``D D*``, upper half computed and mirrored."""
    n = len(dm)
    zero = field.zero
    a = [[zero] * n for _ in range(n)]
    for i in range(n):
        di = dm[i]
        for j in range(i, n):
            dj = dm[j]
            s = zero
            for k in range(n):
                s = s + di[k] * dj[k].conjugate()
            a[i][j] = s
    return mirror(a, field)


def adjoint_matmul(dm, x, field):
    """``D* X`` for square D and X."""
    n = len(dm)
    zero = field.zero
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        oi = out[i]
        for j in range(n):
            s = zero
            for k in range(n):
                s = s + dm[k][i].conjugate() * x[k][j]
            oi[j] = s
    return out
