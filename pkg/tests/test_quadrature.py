"""Adaptive Gauss-Kronrod integration."""

import math

import pytest

from posterior_dynamics.quadrature import (
    QuadratureError,
    integrate,
    integrate_half_line,
    integrate_real_line,
)


class TestFiniteIntervals:
    def test_polynomials_are_exact(self):
        # the embedded 7-point Gauss rule is exact through degree 13
        for k in range(14):
            value, err = integrate(lambda x, k=k: x**k, 0.0, 1.0, tol=1e-12)
            assert value == pytest.approx(1.0 / (k + 1), rel=1e-14)

    def test_oscillatory(self):
        value, err = integrate(math.sin, 0.0, 2 * math.pi, tol=1e-12)
        assert value == pytest.approx(0.0, abs=1e-12)
        value, _ = integrate(lambda x: math.sin(20 * x), 0.0, 1.0, tol=1e-12)
        assert value == pytest.approx((1 - math.cos(20.0)) / 20.0, rel=1e-10)

    def test_error_estimate_is_honest(self):
        value, err = integrate(lambda x: math.exp(-x * x), 0.0, 3.0, tol=1e-12)
        truth = math.sqrt(math.pi) / 2 * math.erf(3.0)
        assert abs(value - truth) <= max(err, 1e-14)

    def test_budget_exhaustion_carries_partial(self):
        with pytest.raises(QuadratureError) as info:
            integrate(lambda x: math.sin(1.0 / (x + 1e-8)), 0.0, 1.0, tol=1e-14,
                      rel_tol=0.0, max_intervals=4)
        assert math.isfinite(info.value.estimate)
        assert info.value.error > 0

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            integrate(math.sin, 1.0, 0.0)


class TestInfiniteDomains:
    def test_half_line_exponential(self):
        for lam in (0.5, 1.0, 3.0):
            value, _ = integrate_half_line(lambda x, l=lam: l * math.exp(-l * x), tol=1e-12)
            assert value == pytest.approx(1.0, rel=1e-11)

    def test_half_line_gamma_moments(self):
        value, _ = integrate_half_line(lambda x: x**2 * math.exp(-x), tol=1e-12)
        assert value == pytest.approx(2.0, rel=1e-11)

    def test_real_line_gaussian(self):
        value, _ = integrate_real_line(
            lambda x: math.exp(-0.5 * x * x) / math.sqrt(2 * math.pi), tol=1e-12
        )
        assert value == pytest.approx(1.0, rel=1e-11)

    def test_real_line_shifted_mean(self):
        value, _ = integrate_real_line(
            lambda x: x * math.exp(-0.5 * (x - 2.0) ** 2) / math.sqrt(2 * math.pi),
            tol=1e-12,
        )
        assert value == pytest.approx(2.0, rel=1e-10)
