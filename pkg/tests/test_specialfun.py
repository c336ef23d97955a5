"""Bessel J and log-gamma: closed forms, recurrences, and oracle comparisons.

Reference values were frozen from a 40-digit multiprecision run (mpmath) and
cross-checked against scipy.special.jv; the tolerances below leave room for
the oracle's own last-digit noise.
"""

import math

import pytest
import scipy.special as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from hotspots import EvalResult, InfeasibleParameterError, bessel_j, log_gamma

# (nu, x, J_nu(x)) frozen at 20 significant digits.
MPMATH_POINTS = [
    (60.0, 55.0, 0.019046683078586297318),
    (60.5, 80.0, -0.057143968509355303228),
    (110.0, 100.0, 0.0029718641631190758509),
    (110.0, 140.0, 0.085118962306915428949),
    (120.0, 118.0, 0.058607111378454567326),
    (35.5, 30.0, 0.0098738748061434751552),
    (80.0, 200.0, -0.013950091144558654835),
    (15.0, 3.0, 2.9076447624060238519e-10),
]

NU_GRID = [0.0, 0.5, 1.0, 2.5, 7.0, 15.5, 33.0, 60.0, 85.5, 110.0, 120.0]
X_GRID = [0.0, 0.25, 1.0, 4.0, 9.5, 20.0, 47.0, 83.0, 120.0, 200.0]


class TestLogGamma:
    def test_half(self):
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), abs=1e-14)

    def test_ten(self):
        assert log_gamma(10.0) == pytest.approx(math.log(362880.0), rel=1e-14)

    def test_integers_one_two(self):
        assert log_gamma(1.0) == 0.0
        assert log_gamma(2.0) == 0.0

    def test_upper_end(self):
        assert math.isfinite(log_gamma(500.0))

    @pytest.mark.parametrize("x", [0.0, -1.0, 500.0001, math.nan])
    def test_rejects_out_of_domain(self, x):
        with pytest.raises(InfeasibleParameterError):
            log_gamma(x)


class TestBesselClosedForms:
    """Half-integer orders reduce to trigonometric expressions."""

    XS = [0.3, 0.7, 1.3, 2.2, 3.5, 5.1, 8.0, 13.0, 21.0, 34.0, 55.0, 89.0, 144.0]

    def test_j_half(self):
        for x in self.XS:
            if abs(math.sin(x)) < 0.05:
                continue
            exact = math.sqrt(2.0 / (math.pi * x)) * math.sin(x)
            assert bessel_j(0.5, x).value == pytest.approx(exact, rel=1e-10)

    def test_j_three_halves(self):
        for x in self.XS:
            exact = math.sqrt(2.0 / (math.pi * x)) * (math.sin(x) / x - math.cos(x))
            if abs(exact) < 0.01:
                continue
            assert bessel_j(1.5, x).value == pytest.approx(exact, rel=1e-10)

    def test_at_zero(self):
        assert bessel_j(0.0, 0.0).value == 1.0
        assert bessel_j(0.5, 0.0).value == 0.0
        assert bessel_j(7.0, 0.0).value == 0.0

    def test_vanishes_at_first_zero_of_j0(self):
        # j_{0,1} frozen at 22 digits; |J_0'| there is about 0.52
        assert abs(bessel_j(0.0, 2.404825557695772768622).value) < 1e-13


class TestBesselAccuracy:
    def test_frozen_multiprecision_points(self):
        for nu, x, truth in MPMATH_POINTS:
            r = bessel_j(nu, x)
            assert abs(r.value - truth) <= 3.0 * r.est_abs_error + 1e-16, (nu, x)

    def test_error_estimate_contract(self):
        for nu in NU_GRID:
            for x in X_GRID:
                r = bessel_j(nu, x)
                assert r.est_abs_error <= 1e-12 * max(1.0, abs(r.value)), (nu, x)

    def test_against_scipy_grid(self):
        for nu in NU_GRID:
            for x in X_GRID:
                r = bessel_j(nu, x)
                ref = sp.jv(nu, x)
                cap = max(5.0 * r.est_abs_error, 1e-13 * max(1.0, abs(ref)))
                assert abs(r.value - ref) <= cap, (nu, x, r, ref)

    def test_three_term_recurrence(self):
        # J_{nu-1}(x) + J_{nu+1}(x) = (2 nu / x) J_nu(x)
        for nu in [1.0, 5.5, 20.0, 60.5, 109.0]:
            for x in [0.5, 3.0, 10.0, 40.0, 90.0, 150.0]:
                lo = bessel_j(nu - 1.0, x).value
                hi = bessel_j(nu + 1.0, x).value
                mid = bessel_j(nu, x).value * 2.0 * nu / x
                scale = max(abs(lo), abs(hi), abs(mid), 1e-280)
                assert abs(lo + hi - mid) <= 1e-11 * scale, (nu, x)

    def test_tiny_argument_leading_term(self):
        # scipy.jv flushes x below ~1e-303 to zero; check that regime against
        # the one-term series (x/2)^nu / Gamma(nu+1), exact to ~x^2/4 here
        for nu in (0.03125, 0.5, 3.0):
            for x in (2.2250738585072014e-308, 1e-306, 1e-280):
                lead = math.exp(nu * math.log(0.5 * x) - math.lgamma(nu + 1.0))
                assert bessel_j(nu, x).value == pytest.approx(lead, rel=1e-13)

    @settings(max_examples=60, deadline=None)
    @given(
        nu=st.floats(min_value=0.0, max_value=120.0),
        # scipy.jv flushes arguments below ~1e-303 to zero; stay above that
        x=st.one_of(st.just(0.0),
                    st.floats(min_value=1e-300, max_value=200.0)),
    )
    def test_tracks_scipy_everywhere(self, nu, x):
        r = bessel_j(nu, x)
        ref = sp.jv(nu, x)
        assert abs(r.value - ref) <= max(5.0 * r.est_abs_error,
                                         1e-12 * max(1.0, abs(ref)))

    def test_returns_eval_result(self):
        r = bessel_j(1.0, 1.0)
        assert isinstance(r, EvalResult)
        assert r.est_abs_error >= 0.0

    @pytest.mark.parametrize("nu,x", [(-0.5, 1.0), (120.5, 1.0), (1.0, -0.1),
                                      (math.nan, 1.0), (1.0, math.inf)])
    def test_rejects_out_of_domain(self, nu, x):
        with pytest.raises(InfeasibleParameterError):
            bessel_j(nu, x)

    def test_deep_underflow_is_graceful(self):
        # far below the turning point: (x/2)^nu / Gamma(nu+1) ~ 1e-272
        r = bessel_j(120.0, 0.5)
        assert 0.0 <= r.value < 1e-260
        assert bessel_j(90.0, 5e-300).value == 0.0
