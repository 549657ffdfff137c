import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf

from qheine import (
    BaseSystem,
    DivisionByZero,
    LengthMismatch,
    NonConvergentBase,
    PochCache,
    default_tol,
    dot,
    e2,
    qpoch_finite,
    qpoch_infinite,
    qpoch_ratio,
    qpoch_scaled,
)
from util import rel

# Exact rational oracle for the five-factor complex product, computed with
# fractions.Fraction: prod_{r<5} (1 - (0.3+0.1i) * 0.4^r).
FINITE5_RE = "0.564167690043392"
FINITE5_IM = "-0.122154726342656"

# Over-truncated product oracle (factors kept until |a * base^R| < 1e-45).
INF_03_05 = "0.5101178266339875718322722176806279452756"

# Ratio-of-products oracle at higher truncation for step = 0.5**1.7, k = 2.
SCALED_02 = "0.6756465231034588284425600628586681374321"


class TestQpochFinite:
    def test_empty_product(self):
        assert qpoch_finite(0.7, 0.5, 0) == 1

    def test_two_factors(self):
        assert rel(qpoch_finite(0.5, 0.5, 2), mpf("0.375")) < mpf("1e-35")

    def test_complex_five_factors(self):
        value = qpoch_finite(mpc("0.3", "0.1"), mpf("0.4"), 5)
        assert abs(value.real - mpf(FINITE5_RE)) < mpf("1e-35")
        assert abs(value.imag - mpf(FINITE5_IM)) < mpf("1e-35")

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            qpoch_finite(0.5, 0.5, -1)


class TestQpochInfinite:
    def test_zero_first_argument(self):
        assert qpoch_infinite(0, 0.5) == 1

    def test_zero_base_single_factor(self):
        assert rel(qpoch_infinite(mpf("0.6"), 0), mpf("0.4")) < mpf("1e-35")

    def test_against_overtruncated_oracle(self):
        value = qpoch_infinite(mpf("0.3"), mpf("0.5"), mpf("1e-30"))
        assert rel(value, mpf(INF_03_05)) < mpf("1e-29")

    def test_nonconvergent_base(self):
        with pytest.raises(NonConvergentBase):
            qpoch_infinite(0.5, 1.0)
        with pytest.raises(NonConvergentBase):
            qpoch_infinite(0.5, -1.2)


class TestQpochScaled:
    def test_integer_index_consistency(self):
        scaled = qpoch_scaled(mpf("0.2"), mpf("0.5"), mpf("0.5"), 3)
        finite = qpoch_finite(mpf("0.2"), mpf("0.5"), 3)
        assert rel(scaled, finite) < mpf("1e-29")

    def test_zero_index(self):
        assert rel(qpoch_scaled(mpf("0.2"), mpf("0.5"), mpf("0.7"), 0), mpf(1)) < mpf(
            "1e-30"
        )

    def test_noninteger_step_against_oracle(self):
        step = mpf("0.5") ** mpf("1.7")
        value = qpoch_scaled(mpf("0.2"), mpf("0.5"), step, 2)
        assert rel(value, mpf(SCALED_02)) < mpf("1e-29")

    def test_pole_is_reported(self):
        # a * step^k = 4 = base^{-2}, so the denominator product vanishes.
        with pytest.raises(DivisionByZero):
            qpoch_scaled(mpf(2), mpf("0.5"), mpf("0.5"), -1)


class TestSymmetricFunctions:
    def test_e2_examples(self):
        assert e2((5,)) == 0
        assert e2((1, 1)) == 1
        assert e2((2, 1)) == 2

    @given(st.lists(st.integers(min_value=0, max_value=30), min_size=1, max_size=5))
    @settings(max_examples=60, deadline=None)
    def test_e2_symmetric_nonnegative(self, k):
        assert e2(tuple(k)) == e2(tuple(reversed(k)))
        assert e2(tuple(sorted(k))) == e2(tuple(k))
        assert e2(tuple(k)) >= 0

    def test_dot_examples(self):
        assert dot((1, 1), (2, 3)) == 5
        assert dot((2, 0.5), (0, 0)) == 0
        assert rel(dot((1.5, 2.5, 1), (1, 2, 3)), mpf("9.5")) < mpf("1e-30")

    def test_dot_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            dot((1, 2), (1, 2, 3))


_reals = st.floats(min_value=-0.9, max_value=0.9).map(mpf)
_bases = st.floats(min_value=-0.75, max_value=0.75).map(mpf)


class TestInvariants:
    @given(_reals, _reals, _bases, _bases, st.integers(min_value=0, max_value=12))
    @settings(max_examples=80, deadline=None)
    def test_functional_equation(self, ar, ai, br, bi, k):
        a = mpc(ar, ai)
        base = mpc(br, bi)
        lhs = qpoch_finite(a, base, k + 1)
        rhs = qpoch_finite(a, base, k) * (1 - a * base**k)
        assert abs(lhs - rhs) <= mpf("1e-25") * max(1, abs(lhs))

    @given(_reals, _bases, st.integers(min_value=0, max_value=10))
    @settings(max_examples=60, deadline=None)
    def test_splitting(self, a, base, k):
        whole = qpoch_infinite(a, base)
        split = qpoch_finite(a, base, k) * qpoch_infinite(a * base**k, base)
        assert rel(whole, split) < 10 * default_tol(mp.prec)

    @given(
        _reals,
        st.floats(min_value=0.05, max_value=0.7).map(mpf),
        st.integers(min_value=1, max_value=3),
        st.integers(min_value=0, max_value=8),
    )
    @settings(max_examples=60, deadline=None)
    def test_duplication(self, a, q, n, k):
        lhs = qpoch_finite(a, q, n * k)
        rhs = mpf(1)
        for r in range(n):
            rhs *= qpoch_finite(a * q**r, q**n, k)
        assert rel(lhs, rhs) < mpf("1e-25")


class TestBaseSystem:
    def test_derived_powers_in_unit_disc(self):
        bases = BaseSystem(mpf("0.3"), mpf("1.5"), mpf("0.8"))
        for value in (bases.qh, bases.qt, bases.qht):
            assert 0 < abs(value) < 1

    def test_integer_exponents_use_plain_powers(self):
        bases = BaseSystem(mpf("0.3"))
        assert bases.power(2) == bases.q**2
        assert bases.power(0) == 1

    def test_power_is_memoised(self):
        bases = BaseSystem(mpf("0.3"), mpf("1.5"), mpf("0.8"))
        assert bases.power(mpf("1.5")) is bases.qh

    def test_rejects_nonconvergent(self):
        with pytest.raises(NonConvergentBase):
            BaseSystem(mpf("1.5"))
        with pytest.raises(NonConvergentBase):
            BaseSystem(mpf(0))

    def test_precision_floor(self):
        with pytest.raises(ValueError):
            BaseSystem(mpf("0.3"), prec=32)


class TestPochCache:
    def test_matches_plain_functions(self):
        cache = PochCache(128)
        a, base = mpf("0.3"), mpf("0.5")
        assert cache.finite(a, base, 7) == qpoch_finite(a, base, 7)
        assert cache.finite(a, base, 3) == qpoch_finite(a, base, 3)
        assert rel(cache.infinite(a, base), qpoch_infinite(a, base)) < mpf("1e-35")
        scale = base**2
        assert rel(cache.ratio(a, base, scale), qpoch_ratio(a, base, scale)) < mpf(
            "1e-35"
        )

    def test_ratio_pole(self):
        cache = PochCache(128)
        with pytest.raises(DivisionByZero):
            cache.ratio(mpf(4), mpf("0.5"), mpf(1))
