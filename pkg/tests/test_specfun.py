"""Special-function accuracy against independent oracles."""

import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

from truncosc import specfun

from oracles import (
    dawson_by_ode,
    gamma_by_product,
    mp_kummer,
    mp_kummer_dz,
    rational_terminating_1f1,
)

# Frozen oracle values (tests recompute them to guard the freeze).
KUMMER_QUARTER_HALF_9 = 2342.9847485258601047
KUMMER_DZ_QUARTER_HALF_4 = 18.51115444004810991
DAWSON_1 = 0.53807950691276841897


class TestKummer:
    def test_empty_series(self):
        assert specfun.kummer_1f1(0.7, 1.3, 0.0) == 1.0

    def test_exponential_case(self):
        assert specfun.kummer_1f1(1.5, 1.5, 4.0) == pytest.approx(math.exp(4.0), rel=1e-14)

    def test_degree_one_terminating(self):
        # 1 - (2/3) * 2.25 = -1/2, exact
        assert specfun.kummer_1f1(-1.0, 1.5, 2.25) == -0.5

    def test_derived_value_against_series_oracle(self):
        got = specfun.kummer_1f1(0.25, 0.5, 9.0)
        assert got == pytest.approx(KUMMER_QUARTER_HALF_9, rel=1e-13)
        assert float(mp_kummer(0.25, 0.5, 9)) == pytest.approx(KUMMER_QUARTER_HALF_9, rel=1e-15)

    def test_b_pole_rejected(self):
        with pytest.raises(ValueError):
            specfun.kummer_1f1(0.3, 0.0, 1.0)
        with pytest.raises(ValueError):
            specfun.kummer_1f1(0.3, -2.0, 1.0)

    @pytest.mark.parametrize("a", [-4.5, -2.3, -1.25, -0.7, 0.25, 1.0, 3.8])
    @pytest.mark.parametrize("b", [0.5, 1.5, 2.5])
    @pytest.mark.parametrize("z", [0.01, 1.0, 9.0, 31.0, 100.0, 200.0,
                                   -0.5, -25.0, -121.0, -200.0])
    def test_accuracy_envelope(self, a, b, z):
        exact = mp_kummer(a, b, z)
        got = specfun.kummer_1f1(a, b, z)
        assert abs((mp.mpf(got) - exact) / exact) < 1e-12

    def test_kummer_transformation_property(self):
        # 1F1(a;b;z) = e^z 1F1(b-a;b;-z); the negative side comes from
        # the independent arbitrary-precision series.
        rng = np.random.default_rng(7)
        for _ in range(60):
            a = rng.uniform(-4.0, 4.0)
            b = float(rng.choice([0.5, 1.5, 2.5, 3.5]))
            z = rng.uniform(-50.0, 50.0)
            mine = specfun.kummer_1f1(a, b, z)
            other = float(mp.e ** mp.mpf(z) * mp_kummer(b - a, b, -z))
            assert mine == pytest.approx(other, rel=1e-10)

    @pytest.mark.parametrize("n", range(11))
    def test_terminating_exactness_bit_for_bit(self, n):
        # Rational z values; floats are exact rationals, so the rational
        # oracle reproduces the expected double exactly.
        for b in (Fraction(1, 2), Fraction(3, 2)):
            for z in (Fraction(7, 4), Fraction(23, 8), Fraction(111, 16)):
                exact = rational_terminating_1f1(n, b, z)
                got = specfun.kummer_1f1(-float(n), float(b), float(z))
                assert got == float(exact)

    def test_array_matches_scalar(self):
        zs = np.array([-40.0, -3.0, 0.0, 0.5, 9.0, 77.0, 140.0])
        arr = specfun.kummer_1f1(0.3, 1.5, zs)
        for z, v in zip(zs, arr):
            assert v == pytest.approx(specfun.kummer_1f1(0.3, 1.5, float(z)), rel=5e-14)

    def test_overflow_signalled(self):
        with pytest.raises(OverflowError):
            specfun.kummer_1f1(1.0, 0.5, 720.0)


class TestKummerDz:
    def test_exponential(self):
        assert specfun.kummer_1f1_dz(1.5, 1.5, 1.0) == pytest.approx(math.e, rel=1e-14)

    def test_linear_term(self):
        assert specfun.kummer_1f1_dz(0.7, 1.3, 0.0) == pytest.approx(0.7 / 1.3, rel=1e-15)

    def test_derived_value_against_fd_oracle(self):
        got = specfun.kummer_1f1_dz(0.25, 0.5, 4.0)
        assert got == pytest.approx(KUMMER_DZ_QUARTER_HALF_4, rel=1e-12)
        assert float(mp_kummer_dz(0.25, 0.5, 4)) == pytest.approx(
            KUMMER_DZ_QUARTER_HALF_4, rel=1e-14)


class TestErfFamily:
    def test_dawson_odd(self):
        assert specfun.dawson(0.0) == 0.0
        assert specfun.dawson(-1.3) == -specfun.dawson(1.3)

    def test_erf_asymptote(self):
        assert specfun.erf(10.0) == pytest.approx(1.0, abs=1e-12)

    def test_dawson_derived_against_ode_oracle(self):
        assert specfun.dawson(1.0) == pytest.approx(DAWSON_1, rel=1e-13)
        assert dawson_by_ode(1.0) == pytest.approx(DAWSON_1, rel=1e-12)

    def test_dawson_ode_identity_on_grid(self):
        xs = np.linspace(-5.0, 5.0, 41)
        h = 1e-5
        d = (specfun.dawson(xs + h) - specfun.dawson(xs - h)) / (2 * h)
        d2 = (specfun.dawson(xs + h / 2) - specfun.dawson(xs - h / 2)) / h
        deriv = (4 * d2 - d) / 3
        residual = deriv + 2 * xs * specfun.dawson(xs) - 1.0
        assert np.max(np.abs(residual)) < 1e-10

    def test_erf_derivative_identity(self):
        xs = np.linspace(-4.0, 4.0, 33)
        h = 1e-5
        d = (specfun.erf(xs + h) - specfun.erf(xs - h)) / (2 * h)
        d2 = (specfun.erf(xs + h / 2) - specfun.erf(xs - h / 2)) / h
        deriv = (4 * d2 - d) / 3
        assert np.max(np.abs(deriv - 2.0 / math.sqrt(math.pi) * np.exp(-xs**2))) < 1e-10

    def test_erfi_dawson_relation(self):
        xs = np.linspace(0.1, 8.0, 25)
        lhs = specfun.dawson(xs)
        rhs = 0.5 * math.sqrt(math.pi) * np.exp(-xs**2) * specfun.erfi(xs)
        assert np.max(np.abs((lhs - rhs) / lhs)) < 1e-12

    def test_erfi_overflow_signalled(self):
        with pytest.raises(OverflowError):
            specfun.erfi(30.0)


class TestGamma:
    def test_small_integers(self):
        assert specfun.gamma(1.0) == 1.0
        assert specfun.gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    def test_negative_against_product_oracle(self):
        assert specfun.gamma(-1.25) == pytest.approx(gamma_by_product(-1.25), rel=1e-12)

    def test_positive_axis_accuracy(self):
        for x in (0.1, 2.7, 11.0, 33.3, 49.5):
            assert specfun.gamma(x) == pytest.approx(float(mp.gamma(x)), rel=1e-12)

    def test_poles(self):
        for x in (0.0, -1.0, -7.0):
            with pytest.raises(ValueError):
                specfun.gamma(x)
