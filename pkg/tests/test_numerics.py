import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cholinv import (
    FxpComplex,
    OpCounter,
    QFormat,
    cholesky_upper,
    frobenius_norm,
    fxp_mul,
    hermitian_mirror,
    make_prng,
    quantize,
    random_hermitian_pd,
)
from cholinv.numerics import Counted, FxpField


def quantize_oracle(x, fmt):
    """Exact rational scale-and-round, independent of the float path."""
    q = round(Fraction(x) * 2**fmt.frac_bits)  # Fraction rounds half to even
    return max(fmt.raw_min, min(fmt.raw_max, q))


def round_fraction(q, fmt):
    return max(fmt.raw_min, min(fmt.raw_max, round(q * 2**fmt.frac_bits)))


def frac_of(raw, fmt):
    return Fraction(raw, 2**fmt.frac_bits)


class TestQFormat:
    def test_range_and_resolution(self):
        fmt = QFormat(1, 2)
        assert fmt.width == 4
        assert fmt.max_value == 1.75
        assert fmt.min_value == -2.0
        assert fmt.resolution == 0.25
        assert (fmt.raw_min, fmt.raw_max) == (-8, 7)

    @pytest.mark.parametrize("text", ["2.13", "Q2.13", " q2.13 "])
    def test_parse(self, text):
        assert QFormat.parse(text) == QFormat(2, 13)

    @pytest.mark.parametrize("text", ["2", "a.b", "2.0", "-1.4"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            QFormat.parse(text)


class TestQuantize:
    def test_zero(self):
        for fmt in (QFormat(0, 1), QFormat(2, 13), QFormat(5, 40)):
            assert quantize(0.0, fmt) == 0

    def test_rounds_to_nearest(self):
        assert quantize(0.3, QFormat(2, 2)) == 1

    def test_saturates(self):
        fmt = QFormat(1, 2)
        assert quantize(5.0, fmt) == 7
        assert fmt.to_float(quantize(5.0, fmt)) == 1.75
        assert quantize(-5.0, fmt) == -8

    def test_ties_to_even(self):
        fmt = QFormat(2, 2)
        assert quantize(0.125, fmt) == 0  # 0.5 -> 0
        assert quantize(0.375, fmt) == 2  # 1.5 -> 2
        assert quantize(-0.375, fmt) == -2

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            quantize(float("nan"), QFormat(2, 13))

    def test_grid_matches_oracle(self):
        for fmt in (QFormat(1, 2), QFormat(2, 8), QFormat(0, 5)):
            for x in np.linspace(-3.0, 3.0, 2401):
                assert quantize(float(x), fmt) == quantize_oracle(float(x), fmt)

    @given(st.floats(-4.0, 4.0, allow_nan=False), st.integers(0, 3), st.integers(1, 30))
    def test_error_bound(self, x, m, f):
        fmt = QFormat(m, f)
        raw = quantize(x, fmt)
        if fmt.min_value <= x <= fmt.max_value:
            assert abs(Fraction(raw, 2**f) - Fraction(x)) <= Fraction(1, 2 ** (f + 1))
        elif x > fmt.max_value:
            assert raw == fmt.raw_max
        else:
            assert raw == fmt.raw_min


class TestFxpComplex:
    def test_identity_multiply(self):
        fmt = QFormat(2, 8)
        one = FxpComplex.from_complex(1, fmt)
        for z in (0.5 - 0.25j, -3.5 + 1.75j, 0.00390625j):
            q = FxpComplex.from_complex(z, fmt)
            assert fxp_mul(one, q) == q

    def test_half_squared(self):
        fmt = QFormat(1, 2)
        h = FxpComplex.from_complex(0.5, fmt)
        assert complex(fxp_mul(h, h)) == 0.25

    def test_worked_product(self):
        fmt = QFormat(1, 2)
        a = FxpComplex.from_complex(0.75 + 0.5j, fmt)
        b = FxpComplex.from_complex(0.75 - 0.5j, fmt)
        assert complex(fxp_mul(a, b)) == 0.75 + 0j
        # oracle: exact product 0.8125 then one rounding at f = 2
        assert round_fraction(Fraction(13, 16), fmt) == fxp_mul(a, b).re

    def test_format_mismatch(self):
        with pytest.raises(ValueError):
            fxp_mul(FxpComplex(1, 0, QFormat(2, 4)), FxpComplex(1, 0, QFormat(2, 5)))

    @given(st.integers(-(2**10), 2**10 - 1), st.integers(-(2**10), 2**10 - 1),
           st.integers(-(2**10), 2**10 - 1), st.integers(-(2**10), 2**10 - 1))
    def test_mul_single_rounding(self, ar, ai, br, bi):
        fmt = QFormat(2, 8)
        a, b = FxpComplex(ar, ai, fmt), FxpComplex(br, bi, fmt)
        p = a * b
        fa, fb = (frac_of(ar, fmt), frac_of(ai, fmt)), (frac_of(br, fmt), frac_of(bi, fmt))
        assert p.re == round_fraction(fa[0] * fb[0] - fa[1] * fb[1], fmt)
        assert p.im == round_fraction(fa[0] * fb[1] + fa[1] * fb[0], fmt)

    @given(st.integers(-(2**10), 2**10 - 1), st.integers(-(2**10), 2**10 - 1),
           st.integers(-(2**10), 2**10 - 1), st.integers(-(2**10), 2**10 - 1))
    def test_div_single_rounding(self, ar, ai, br, bi):
        fmt = QFormat(2, 8)
        if br == 0 and bi == 0:
            return
        a, b = FxpComplex(ar, ai, fmt), FxpComplex(br, bi, fmt)
        q = a / b
        num_re = Fraction(ar * br + ai * bi)
        num_im = Fraction(ai * br - ar * bi)
        den = Fraction(br * br + bi * bi)
        assert q.re == round_fraction(num_re / den, fmt)
        assert q.im == round_fraction(num_im / den, fmt)

    def test_div_by_zero(self):
        fmt = QFormat(2, 8)
        with pytest.raises(ZeroDivisionError):
            FxpComplex(3, 0, fmt) / FxpComplex(0, 0, fmt)

    @given(st.integers(1, 1_000_000))  # sqrt stays below the Q4.12 max
    def test_sqrt_nearest(self, raw):
        fmt = QFormat(4, 12)
        s = FxpComplex(raw, 0, fmt).sqrt()
        exact = math.sqrt(raw / 2**12)
        assert abs(s.real - exact) <= 2**-13 + 1e-15
        # nearest: neighbours are no closer
        for nb in (s.re - 1, s.re + 1):
            assert abs(nb / 2**12 - exact) >= abs(s.real - exact) - 1e-15

    def test_add_sub_saturate(self):
        fmt = QFormat(1, 2)
        big = FxpComplex(7, -8, fmt)
        assert (big + big).re == 7 and (big + big).im == -8
        assert (big - FxpComplex(-8, 7, fmt)).re == 7
        assert big.conjugate().im == 7  # -(-8) clamps to raw max

    def test_field_constants(self):
        fld = FxpField(QFormat(2, 13))
        assert complex(fld.one) == 1 and complex(fld.zero) == 0


class TestCounting:
    def test_counts_each_operation(self):
        c = OpCounter()
        a, b = Counted(1 + 2j, c), Counted(3 - 1j, c)
        ((a * b) / b + a - b).conjugate()
        assert c.as_tuple() == (1, 1, 2, 0)
        assert c.mul_ops == 2

    def test_reset(self):
        c = OpCounter(3, 4, 5, 6)
        c.reset()
        assert c.as_tuple() == (0, 0, 0, 0)


class TestNorm:
    def test_zero(self):
        assert frobenius_norm(np.zeros((3, 4))) == 0.0

    @pytest.mark.parametrize("n", [1, 4, 9])
    def test_identity(self, n):
        assert frobenius_norm(np.eye(n)) == pytest.approx(math.sqrt(n), rel=1e-15)

    def test_345(self):
        assert frobenius_norm([[3, 4], [0, 0]]) == 5.0

    def test_complex_entries(self):
        assert frobenius_norm([[3j, 0], [0, 4]]) == 5.0


class TestMirror:
    def test_identity(self):
        assert np.array_equal(hermitian_mirror(np.triu(np.eye(3))), np.eye(3))

    def test_two_by_two(self):
        x = hermitian_mirror([[1, 2 + 1j], [99, 3 + 0.5j]])
        assert np.array_equal(x, np.array([[1, 2 + 1j], [2 - 1j, 3]]))

    @given(st.integers(1, 8), st.integers(0, 2**32))
    def test_result_is_hermitian(self, n, seed):
        rng = np.random.default_rng(seed)
        x = hermitian_mirror(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
        assert np.array_equal(x, x.conj().T)

    def test_recovers_hermitian(self):
        a = random_hermitian_pd(7, make_prng(5))
        assert frobenius_norm(a - hermitian_mirror(np.triu(a))) == 0.0


class TestGenerator:
    def test_deterministic(self):
        a = random_hermitian_pd(6, make_prng(123, 4))
        b = random_hermitian_pd(6, make_prng(123, 4))
        assert a.tobytes() == b.tobytes()

    def test_streams_differ_by_key(self):
        a = random_hermitian_pd(6, make_prng(123, 4))
        b = random_hermitian_pd(6, make_prng(123, 5))
        assert not np.array_equal(a, b)

    def test_exactly_hermitian(self):
        for seed in range(50):
            a = random_hermitian_pd(5, make_prng(seed))
            assert np.array_equal(a, a.conj().T)

    def test_cholesky_succeeds_1000_seeds(self):
        for seed in range(1000):
            n = 2 + seed % 7
            a = random_hermitian_pd(n, make_prng(seed), delta=0.1)
            cholesky_upper(a)
            assert np.linalg.eigvalsh(a).min() >= 0.1 - 1e-12

    def test_fits_format(self):
        fmt = QFormat(0, 15)
        for seed in range(20):
            a = random_hermitian_pd(8, make_prng(seed), delta=0.5, fmt=fmt)
            assert np.abs(a).max() <= 0.9 * fmt.max_value * (1 + 1e-15)
            assert np.array_equal(a, a.conj().T)

    def test_no_upscaling(self):
        a = random_hermitian_pd(4, make_prng(1), fmt=QFormat(8, 8))
        b = random_hermitian_pd(4, make_prng(1))
        assert np.array_equal(a, b)

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            random_hermitian_pd(0, make_prng(1))
        with pytest.raises(ValueError):
            random_hermitian_pd(3, make_prng(1), delta=0.0)


@settings(max_examples=50)
@given(st.floats(-1e3, 1e3, allow_nan=False), st.floats(-1e3, 1e3, allow_nan=False))
def test_conjugate_involution(re, im):
    z = complex(re, im)
    assert z.conjugate().conjugate() == z
    assert abs(z) ** 2 == pytest.approx(re * re + im * im, rel=1e-12, abs=1e-300)
