# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled complex128 kernels with inline operation counting.

Each routine performs the same scalar operations, in the same order, as its
counterpart in ``cholinv._generic``; results match the pure-Python path
bit for bit and counts match exactly.  ``counts`` is an int64 array
``[cmul, cdiv, cadd, csqrt]`` that is incremented in place.
"""

import numpy as np
from libc.math cimport sqrt, fabs


cdef struct cplx:
    double re
    double im


cdef inline cplx mk(double re, double im) noexcept nogil:
    cdef cplx z
    z.re = re
    z.im = im
    return z


cdef inline cplx ld(double complex z) noexcept nogil:
    return mk(z.real, z.imag)


cdef inline double complex st(cplx z) noexcept nogil:
    # write the parts directly; re + 1j*im would drop the sign of a zero im
    cdef double complex out
    cdef double* p = <double*>&out
    p[0] = z.re
    p[1] = z.im
    return out


cdef inline cplx cj(cplx a) noexcept nogil:
    return mk(a.re, -a.im)


cdef inline cplx sub(cplx a, cplx b) noexcept nogil:
    return mk(a.re - b.re, a.im - b.im)


cdef inline cplx add(cplx a, cplx b) noexcept nogil:
    return mk(a.re + b.re, a.im + b.im)


cdef inline cplx mul(cplx a, cplx b) noexcept nogil:
    return mk(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)


cdef inline cplx quot(cplx a, cplx b) noexcept nogil:
    # same scaled algorithm as CPython's complex division
    cdef double ratio, denom
    if fabs(b.re) >= fabs(b.im):
        ratio = b.im / b.re
        denom = b.re + b.im * ratio
        return mk((a.re + a.im * ratio) / denom, (a.im - a.re * ratio) / denom)
    ratio = b.re / b.im
    denom = b.re * ratio + b.im
    return mk((a.re * ratio + a.im) / denom, (a.im * ratio - a.re) / denom)


cdef inline cplx sub_mul(cplx s, cplx a, cplx b) noexcept nogil:
    cdef cplx p = mul(a, b)
    return mk(s.re - p.re, s.im - p.im)


cdef inline cplx add_mul(cplx s, cplx a, cplx b) noexcept nogil:
    cdef cplx p = mul(a, b)
    return mk(s.re + p.re, s.im + p.im)


def chol(double complex[:, ::1] a, double eps, long long[::1] counts):
    """In-place Cholesky. Returns 0, or the 1-based failing pivot."""
    cdef Py_ssize_t n = a.shape[0], i, j, k
    cdef long long nm = 0, nd = 0, na = 0, nq = 0
    cdef cplx s, r, rii
    cdef int fail = 0
    with nogil:
        for i in range(n):
            s = ld(a[i, i])
            for k in range(i):
                r = ld(a[k, i])
                s = sub_mul(s, cj(r), r)
            nm += i
            na += i
            if s.re <= eps:
                fail = <int>i + 1
                break
            rii = mk(sqrt(s.re), 0.0)
            nq += 1
            a[i, i] = st(rii)
            for j in range(i + 1, n):
                s = ld(a[i, j])
                for k in range(i):
                    s = sub_mul(s, cj(ld(a[k, i])), ld(a[k, j]))
                a[i, j] = st(quot(s, rii))
            nm += i * (n - i - 1)
            na += i * (n - i - 1)
            nd += n - i - 1
            for j in range(i):
                a[i, j] = 0
    counts[0] += nm
    counts[1] += nd
    counts[2] += na
    counts[3] += nq
    return fail


def ldl(double complex[:, ::1] a, double complex[::1] d, double eps, long long[::1] counts):
    """In-place LDL into unit-upper R; pivots written to ``d``."""
    cdef Py_ssize_t n = a.shape[0], i, j, k
    cdef long long nm = 0, nd = 0, na = 0
    cdef cplx s, di
    cdef int fail = 0
    cdef double complex[::1] w = np.zeros(n, dtype=np.complex128)
    with nogil:
        for i in range(n):
            for k in range(i):
                w[k] = st(mul(cj(ld(a[k, i])), ld(d[k])))
            s = ld(a[i, i])
            for k in range(i):
                s = sub_mul(s, ld(w[k]), ld(a[k, i]))
            nm += 2 * i
            na += i
            di = mk(s.re, 0.0)
            if fabs(di.re) <= eps:
                fail = <int>i + 1
                break
            d[i] = st(di)
            for j in range(i + 1, n):
                s = ld(a[i, j])
                for k in range(i):
                    s = sub_mul(s, ld(w[k]), ld(a[k, j]))
                a[i, j] = st(quot(s, di))
            nm += i * (n - i - 1)
            na += i * (n - i - 1)
            nd += n - i - 1
            a[i, i] = 1
            for j in range(i):
                a[i, j] = 0
    counts[0] += nm
    counts[1] += nd
    counts[2] += na
    return fail


cdef void _forward(double complex[:, ::1] r, double complex[::1] y, double complex[::1] b,
                   Py_ssize_t start, double complex[::1] d, bint has_d, long long[::1] counts) noexcept nogil:
    cdef Py_ssize_t n = r.shape[0], k, m
    cdef cplx s
    for k in range(start):
        b[k] = 0
    for k in range(start, n):
        s = ld(y[k])
        for m in range(start, k):
            s = sub_mul(s, cj(ld(r[m, k])), ld(b[m]))
        counts[0] += k - start
        counts[2] += k - start
        if has_d:
            b[k] = st(s)
        else:
            b[k] = st(quot(s, cj(ld(r[k, k]))))
            counts[1] += 1
    if has_d:
        for k in range(start, n):
            b[k] = st(quot(ld(b[k]), ld(d[k])))
        counts[1] += n - start


cdef void _backward(double complex[:, ::1] r, double complex[::1] b, double complex[::1] x,
                    bint unit, long long[::1] counts) noexcept nogil:
    cdef Py_ssize_t n = r.shape[0], k, m
    cdef cplx s
    for k in range(n - 1, -1, -1):
        s = ld(b[k])
        for m in range(k + 1, n):
            s = sub_mul(s, ld(r[k, m]), ld(x[m]))
        counts[0] += n - k - 1
        counts[2] += n - k - 1
        if unit:
            x[k] = st(s)
        else:
            x[k] = st(quot(s, ld(r[k, k])))
            counts[1] += 1


cdef void _mirror(double complex[:, ::1] x) noexcept nogil:
    cdef Py_ssize_t n = x.shape[0], i, j
    for i in range(n):
        x[i, i] = x[i, i].real
        for j in range(i + 1, n):
            x[j, i] = x[i, j].conjugate()


def forward(double complex[:, ::1] r, double complex[::1] y, Py_ssize_t start, d, long long[::1] counts):
    cdef Py_ssize_t n = r.shape[0]
    b = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] bv = b
    cdef double complex[::1] dv
    if d is None:
        dv = np.ones(1, dtype=np.complex128)
        _forward(r, y, bv, start, dv, False, counts)
    else:
        dv = d
        _forward(r, y, bv, start, dv, True, counts)
    return b


def backward(double complex[:, ::1] r, double complex[::1] b, bint unit, long long[::1] counts):
    x = np.zeros(r.shape[0], dtype=np.complex128)
    cdef double complex[::1] xv = x
    _backward(r, b, xv, unit, counts)
    return x


cdef void _tri_inverse(double complex[:, ::1] r, double complex[:, ::1] m, double complex[::1] col,
                       long long[::1] counts) noexcept nogil:
    cdef Py_ssize_t n = r.shape[0], i, k, p
    cdef cplx s
    for i in range(n):
        for k in range(n):
            col[k] = 0
        col[i] = st(quot(mk(1.0, 0.0), ld(r[i, i])))
        counts[1] += 1
        for k in range(i - 1, -1, -1):
            s = mk(0.0, 0.0)
            for p in range(k + 1, n):
                s = sub_mul(s, ld(r[k, p]), ld(col[p]))
            counts[0] += n - k - 1
            counts[2] += n - k - 1
            col[k] = st(quot(s, ld(r[k, k])))
            counts[1] += 1
        for k in range(i + 1):
            m[k, i] = col[k]


def tri_inverse(double complex[:, ::1] r, long long[::1] counts):
    cdef Py_ssize_t n = r.shape[0]
    m = np.zeros((n, n), dtype=np.complex128)
    col = np.zeros(n, dtype=np.complex128)
    _tri_inverse(r, m, col, counts)
    return m


def inv_eqsolve(double complex[:, ::1] r, d, long long[::1] counts):
    cdef Py_ssize_t n = r.shape[0], i, k
    x = np.zeros((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] xv = x
    cdef double complex[::1] e = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] b = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] col = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] dv
    cdef bint has_d = d is not None
    dv = d if has_d else np.ones(1, dtype=np.complex128)
    with nogil:
        for i in range(n):
            for k in range(n):
                e[k] = 0
            e[i] = 1
            _forward(r, e, b, i, dv, has_d, counts)
            _backward(r, b, col, has_d, counts)
            for k in range(i + 1):
                xv[k, i] = col[k]
        _mirror(xv)
    return x


def inv_trimat(double complex[:, ::1] r, long long[::1] counts):
    cdef Py_ssize_t n = r.shape[0], i, j, k
    m = np.zeros((n, n), dtype=np.complex128)
    x = np.zeros((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] mv = m
    cdef double complex[:, ::1] xv = x
    cdef double complex[::1] col = np.zeros(n, dtype=np.complex128)
    cdef cplx s
    with nogil:
        _tri_inverse(r, mv, col, counts)
        for i in range(n):
            for j in range(i, n):
                s = mk(0.0, 0.0)
                for k in range(j, n):
                    s = add_mul(s, ld(mv[i, k]), cj(ld(mv[j, k])))
                counts[0] += n - j
                counts[2] += n - j
                xv[i, j] = st(s)
        _mirror(xv)
    return x


def shortcut(double complex[::1] diag, long long[::1] counts):
    cdef Py_ssize_t n = diag.shape[0], i
    out = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] ov = out
    for i in range(n):
        ov[i] = st(quot(mk(1.0, 0.0), ld(diag[i])))
    counts[1] += n
    return out


def inv_proposed(double complex[:, ::1] r, double complex[::1] values, bint unit, long long[::1] counts):
    cdef Py_ssize_t n = r.shape[0], j, k, p
    x = np.zeros((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] xv = x
    cdef double complex[::1] col = np.zeros(n, dtype=np.complex128)
    cdef cplx s
    with nogil:
        for j in range(n - 1, -1, -1):
            for p in range(j + 1, n):
                col[p] = xv[j, p].conjugate()
            for k in range(j, -1, -1):
                if k == j:
                    s = ld(values[j])
                else:
                    s = mk(0.0, 0.0)
                for p in range(k + 1, n):
                    s = sub_mul(s, ld(r[k, p]), ld(col[p]))
                counts[0] += n - k - 1
                counts[2] += n - k - 1
                if not unit:
                    s = quot(s, ld(r[k, k]))
                    counts[1] += 1
                col[k] = st(s)
                xv[k, j] = col[k]
        _mirror(xv)
    return x


def gram(double complex[:, ::1] dm, long long[::1] counts):
    cdef Py_ssize_t n = dm.shape[0], i, j, k
    a = np.zeros((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] av = a
    cdef cplx s
    with nogil:
        for i in range(n):
            for j in range(i, n):
                s = mk(0.0, 0.0)
                for k in range(n):
                    s = add_mul(s, ld(dm[i, k]), cj(ld(dm[j, k])))
                av[i, j] = st(s)
            counts[0] += n * (n - i)
            counts[2] += n * (n - i)
        _mirror(av)
    return a


def adjoint_matmul(double complex[:, ::1] dm, double complex[:, ::1] x, long long[::1] counts):
    cdef Py_ssize_t n = dm.shape[0], i, j, k
    out = np.zeros((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    cdef cplx s
    with nogil:
        for i in range(n):
            for j in range(n):
                s = mk(0.0, 0.0)
                for k in range(n):
                    s = add_mul(s, cj(ld(dm[k, i])), ld(x[k, j]))
                ov[i, j] = st(s)
        counts[0] += n * n * n
        counts[2] += n * n * n
    return out
