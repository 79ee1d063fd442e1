"""Scalar arithmetic, operation counting, fixed-point simulation and matrix helpers.

Every kernel in :mod:`cholinv._generic` is written once against a small scalar
protocol (``+ - * /``, ``conjugate()``) plus a *field* object that supplies
constants, square roots and real-part extraction.  Three fields exist:

``ComplexField``
    plain Python ``complex`` (IEEE double).
``CountingField``
    ``Counted`` scalars that tally every operation into an :class:`OpCounter`.
``FxpField``
    :class:`FxpComplex` scalars simulating signed Qm.f arithmetic.

Dense matrices at the public API are ``numpy.ndarray`` of ``complex128``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "OpCounter",
    "Counted",
    "ComplexField",
    "CountingField",
    "FxpField",
    "QFormat",
    "FxpComplex",
    "quantize",
    "fxp_mul",
    "frobenius_norm",
    "hermitian_mirror",
    "make_prng",
    "random_hermitian_pd",
    "as_matrix",
]


# ---------------------------------------------------------------------------
# Operation counting
# ---------------------------------------------------------------------------


@dataclass
class OpCounter:
    """Tally of complex scalar operations.

    One complex multiplication counts 1 regardless of how many real products
    it takes; multiplying by a real number is still a ``cmul``.  Subtractions
    count as ``cadd``.
    """

    cmul: int = 0
    cdiv: int = 0
    cadd: int = 0
    csqrt: int = 0

    @property
    def mul_ops(self) -> int:
        """Multiplicative operations: ``cmul + cdiv``."""
        return self.cmul + self.cdiv

    def reset(self) -> None:
        self.cmul = self.cdiv = self.cadd = self.csqrt = 0

    def add_counts(self, counts) -> None:
        cmul, cdiv, cadd, csqrt = (int(c) for c in counts)
        self.cmul += cmul
        self.cdiv += cdiv
        self.cadd += cadd
        self.csqrt += csqrt

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.cmul, self.cdiv, self.cadd, self.csqrt)


class Counted:
    """A complex double that reports each arithmetic operation to a counter."""

    __slots__ = ("value", "counter")

    def __init__(self, value: complex, counter: OpCounter):
        self.value = complex(value)
        self.counter = counter

    def __add__(self, other: Counted) -> Counted:
        self.counter.cadd += 1
        return Counted(self.value + other.value, self.counter)

    def __sub__(self, other: Counted) -> Counted:
        self.counter.cadd += 1
        return Counted(self.value - other.value, self.counter)

    def __mul__(self, other: Counted) -> Counted:
        self.counter.cmul += 1
        return Counted(self.value * other.value, self.counter)

    def __truediv__(self, other: Counted) -> Counted:
        self.counter.cdiv += 1
        return Counted(self.value / other.value, self.counter)

    def conjugate(self) -> Counted:
        return Counted(self.value.conjugate(), self.counter)

    @property
    def real(self) -> float:
        return self.value.real

    def __complex__(self) -> complex:
        return self.value

    def __repr__(self) -> str:
        return f"Counted({self.value!r})"


class ComplexField:
    """Plain double-precision complex arithmetic."""

    zero = 0j
    one = 1 + 0j

    @staticmethod
    def wrap(z) -> complex:
        return complex(z)

    @staticmethod
    def unwrap(x) -> complex:
        return x

    @staticmethod
    def real(x) -> float:
        return x.real

    @staticmethod
    def realify(x) -> complex:
        return complex(x.real)

    @staticmethod
    def sqrt(x) -> complex:
        return complex(math.sqrt(x.real))

    @staticmethod
    def is_saturated(x) -> bool:
        return False


class CountingField:
    def __init__(self, counter: OpCounter):
        self.counter = counter
        self.zero = Counted(0j, counter)
        self.one = Counted(1 + 0j, counter)

    def wrap(self, z) -> Counted:
        return Counted(z, self.counter)

    @staticmethod
    def unwrap(x: Counted) -> complex:
        return x.value

    @staticmethod
    def real(x: Counted) -> float:
        return x.value.real

    def realify(self, x: Counted) -> Counted:
        return Counted(complex(x.value.real), self.counter)

    def sqrt(self, x: Counted) -> Counted:
        self.counter.csqrt += 1
        return Counted(complex(math.sqrt(x.value.real)), self.counter)

    @staticmethod
    def is_saturated(x) -> bool:
        return False


# ---------------------------------------------------------------------------
# Fixed point
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QFormat:
    """Signed fixed-point format Qm.f: one sign bit, ``int_bits`` integer bits
    and ``frac_bits`` fractional bits."""

    int_bits: int
    frac_bits: int

    def __post_init__(self):
        if self.int_bits < 0 or self.frac_bits < 1:
            raise ValueError(f"invalid Q format Q{self.int_bits}.{self.frac_bits}")

    @classmethod
    def parse(cls, text: str) -> QFormat:
        """Parse ``"M.F"`` (an optional leading ``Q`` is accepted)."""
        body = text.strip()
        if body[:1] in ("Q", "q"):
            body = body[1:]
        m, sep, f = body.partition(".")
        if not sep:
            raise ValueError(f"Q format must look like M.F, got {text!r}")
        return cls(int(m), int(f))

    @property
    def width(self) -> int:
        return self.int_bits + self.frac_bits + 1

    @property
    def raw_min(self) -> int:
        return -(1 << (self.int_bits + self.frac_bits))

    @property
    def raw_max(self) -> int:
        return (1 << (self.int_bits + self.frac_bits)) - 1

    @property
    def max_value(self) -> float:
        return math.ldexp(self.raw_max, -self.frac_bits)

    @property
    def min_value(self) -> float:
        return float(-(1 << self.int_bits))

    @property
    def resolution(self) -> float:
        return math.ldexp(1.0, -self.frac_bits)

    def saturate(self, raw: int) -> int:
        lo = -(1 << (self.int_bits + self.frac_bits))
        if raw < lo:
            return lo
        hi = -lo - 1
        if raw > hi:
            return hi
        return raw

    def to_float(self, raw: int) -> float:
        return math.ldexp(raw, -self.frac_bits)

    def __str__(self) -> str:
        return f"Q{self.int_bits}.{self.frac_bits}"


def _round_div(num: int, den: int) -> int:
    """num/den rounded to nearest, ties to even (den > 0)."""
    q, r = divmod(num, den)
    twice = 2 * r
    if twice > den or (twice == den and q & 1):
        q += 1
    return q


def quantize(x: float, fmt: QFormat) -> int:
    """Raw mantissa of ``x`` in ``fmt``: round half to even, then saturate."""
    if math.isnan(x):
        raise ValueError("cannot quantize NaN")
    if math.isinf(x):
        return fmt.raw_max if x > 0 else fmt.raw_min
    # ldexp scaling is exact; Python's round() is round-half-even on floats
    return fmt.saturate(round(math.ldexp(x, fmt.frac_bits)))


class FxpComplex:
    """Complex number with real and imaginary parts held as Qm.f mantissas.

    Products keep all ``2f`` fractional bits before a single rounding per
    component.  Division is computed exactly as a rational and rounded once.
    Every result saturates to the format range.
    """

    __slots__ = ("re", "im", "fmt")

    def __init__(self, re: int, im: int, fmt: QFormat):
        self.re = re
        self.im = im
        self.fmt = fmt

    @classmethod
    def from_complex(cls, z, fmt: QFormat) -> FxpComplex:
        z = complex(z)
        return cls(quantize(z.real, fmt), quantize(z.imag, fmt), fmt)

    def __add__(self, other: FxpComplex) -> FxpComplex:
        sat = self.fmt.saturate
        return FxpComplex(sat(self.re + other.re), sat(self.im + other.im), self.fmt)

    def __sub__(self, other: FxpComplex) -> FxpComplex:
        sat = self.fmt.saturate
        return FxpComplex(sat(self.re - other.re), sat(self.im - other.im), self.fmt)

    def __mul__(self, other: FxpComplex) -> FxpComplex:
        fmt = self.fmt
        a, b, c, d = self.re, self.im, other.re, other.im
        den = 1 << fmt.frac_bits
        re = _round_div(a * c - b * d, den)
        im = _round_div(a * d + b * c, den)
        return FxpComplex(fmt.saturate(re), fmt.saturate(im), fmt)

    def __truediv__(self, other: FxpComplex) -> FxpComplex:
        fmt = self.fmt
        a, b, c, d = self.re, self.im, other.re, other.im
        f = fmt.frac_bits
        if d == 0:
            if c == 0:
                raise ZeroDivisionError("fixed-point division by zero")
            if c < 0:
                a, b, c = -a, -b, -c
            re = _round_div(a << f, c)
            im = _round_div(b << f, c)
        else:
            den = c * c + d * d
            re = _round_div((a * c + b * d) << f, den)
            im = _round_div((b * c - a * d) << f, den)
        return FxpComplex(fmt.saturate(re), fmt.saturate(im), fmt)

    def conjugate(self) -> FxpComplex:
        return FxpComplex(self.re, self.fmt.saturate(-self.im), self.fmt)

    def sqrt(self) -> FxpComplex:
        """Square root of the real part, rounded to nearest."""
        if self.re <= 0:
            return FxpComplex(0, 0, self.fmt)
        n = self.re << self.fmt.frac_bits
        s = math.isqrt(n)
        # s^2 <= n < (s+1)^2; round up when n > (s + 1/2)^2, i.e. n > s^2 + s
        if n - s * s > s:
            s += 1
        return FxpComplex(self.fmt.saturate(s), 0, self.fmt)

    @property
    def real(self) -> float:
        return self.fmt.to_float(self.re)

    @property
    def imag(self) -> float:
        return self.fmt.to_float(self.im)

    def __complex__(self) -> complex:
        return complex(self.real, self.imag)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FxpComplex):
            return NotImplemented
        return (self.re, self.im, self.fmt) == (other.re, other.im, other.fmt)

    def __hash__(self):
        return hash((self.re, self.im, self.fmt))

    def __repr__(self) -> str:
        return f"FxpComplex({complex(self)!r}, {self.fmt})"


def fxp_mul(a: FxpComplex, b: FxpComplex) -> FxpComplex:
    if a.fmt != b.fmt:
        raise ValueError(f"format mismatch: {a.fmt} vs {b.fmt}")
    return a * b


class FxpField:
    def __init__(self, fmt: QFormat):
        self.fmt = fmt
        self.zero = FxpComplex(0, 0, fmt)
        self.one = FxpComplex(fmt.saturate(1 << fmt.frac_bits), 0, fmt)

    def wrap(self, z) -> FxpComplex:
        return FxpComplex.from_complex(z, self.fmt)

    @staticmethod
    def unwrap(x: FxpComplex) -> complex:
        return complex(x)

    @staticmethod
    def real(x: FxpComplex) -> float:
        return x.real

    @staticmethod
    def realify(x: FxpComplex) -> FxpComplex:
        return FxpComplex(x.re, 0, x.fmt)

    @staticmethod
    def sqrt(x: FxpComplex) -> FxpComplex:
        return x.sqrt()

    @staticmethod
    def is_saturated(x: FxpComplex) -> bool:
        lo, hi = x.fmt.raw_min, x.fmt.raw_max
        return x.re in (lo, hi) or x.im in (lo, hi)


# ---------------------------------------------------------------------------
# Matrix helpers
# ---------------------------------------------------------------------------


def as_matrix(a) -> np.ndarray:
    """Copy ``a`` into a C-contiguous complex128 2-D array."""
    m = np.array(a, dtype=np.complex128, order="C", copy=True)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError("matrix must have at least one row and one column")
    return m


def frobenius_norm(m) -> float:
    m = np.asarray(m)
    return float(np.sqrt(np.sum(m.real**2 + m.imag**2)))


def hermitian_mirror(x) -> np.ndarray:
    """Fill the strict lower triangle from the upper one by conjugation.

    The imaginary part of the diagonal is set to exactly zero.
    """
    x = as_matrix(x)
    n, m = x.shape
    if n != m:
        raise ValueError("hermitian_mirror needs a square matrix")
    il = np.tril_indices(n, -1)
    x[il] = x.T[il].conj()
    x[np.diag_indices(n)] = x.diagonal().real
    return x


def make_prng(seed: int, *key: int) -> np.random.Generator:
    """PCG64 generator for the stream identified by ``(seed, *key)``.

    Streams for distinct keys are statistically independent and do not
    depend on the order in which they are created.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def random_hermitian_pd(
    n: int,
    prng: np.random.Generator,
    delta: float = 0.1,
    fmt: QFormat | None = None,
) -> np.ndarray:
    """Random Hermitian positive-definite matrix ``G G*/n + delta I``.

    ``G`` has independent entries with real and imaginary parts uniform on
    [-1, 1].  When ``fmt`` is given the matrix is scaled down (never up) so
    that every entry magnitude is at most ``0.9 * fmt.max_value``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not delta > 0:
        raise ValueError("delta must be positive")
    g = prng.uniform(-1.0, 1.0, size=(n, n)) + 1j * prng.uniform(-1.0, 1.0, size=(n, n))
    a = (g @ g.conj().T) / n + delta * np.eye(n)
    a = hermitian_mirror(np.triu(a))
    if fmt is not None:
        rho = 0.9 * fmt.max_value
        scale = max(1.0, float(np.max(np.abs(a))) / rho)
        if scale > 1.0:
            a = a / scale
    return a
