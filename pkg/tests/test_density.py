"""Tests for the four density-evaluation routes and the dispatcher.

Frozen reference values come from an arbitrary-precision Bessel oracle
(mpmath at 25 digits); e_1 and e_2 have closed forms, everything else is
cross-checked between independent routes.
"""

import math

import mpmath
import numpy as np
import pytest

from urbanik_sf.complex_gamma import log_gamma
from urbanik_sf.density import (
    CANCELLATION_CAP,
    DENSITY_SPEC,
    Method,
    SaddleIntegrand,
    asympt_large,
    asympt_small,
    bessel_k0,
    bessel_k0_scaled,
    density,
    density_closed,
    density_direct,
    density_shifted,
)
from urbanik_sf.errors import CancellationError, DomainError
from urbanik_sf.quadrature import LineContour, QuadSpec, trapezoid_line

mpmath.mp.dps = 25

# Frozen oracle values.
TWO_K0_2 = 0.22778774549906687       # 2 K_0(2)
TWO_K0_4 = 0.022319352171706048      # 2 K_0(4)
TWO_K0_20 = 1.1482475630673049e-09   # 2 K_0(20)
K0_03 = 1.3724600605442974           # K_0(0.3)
K0_77 = 2.0142005030269220e-04       # K_0(7.7)
K0_1234 = 2.8841984155813239e-55     # K_0(123.4)
EULER_GAMMA = 0.5772156649015329


class TestBesselK0:
    def test_frozen_values(self):
        assert abs(bessel_k0(0.3) - K0_03) < 1e-13 * K0_03
        assert abs(bessel_k0(7.7) - K0_77) < 1e-13 * K0_77
        assert abs(bessel_k0(123.4) - K0_1234) < 1e-13 * K0_1234

    def test_against_oracle_sweep(self):
        for x in np.geomspace(0.01, 300.0, 60):
            ref = float(mpmath.besselk(0, mpmath.mpf(x)))
            assert abs(bessel_k0(float(x)) - ref) <= 1e-12 * ref

    def test_scaled_no_underflow(self):
        val = bessel_k0_scaled(2000.0)
        assert abs(val - math.sqrt(math.pi / 4000.0)) < 1e-4 * val

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_k0(0.0)
        with pytest.raises(DomainError):
            bessel_k0(-1.0)


class TestClosedForms:
    def test_exponential(self):
        d = density_closed(1.0, 0.3)
        assert d.method is Method.CLOSED_FORM
        assert abs(d.value - math.exp(-0.3)) < 1e-15

    def test_bessel(self):
        d = density_closed(2.0, 1.0)
        assert abs(d.value - TWO_K0_2) < 1e-12 * TWO_K0_2

    def test_rejects_other_c(self):
        with pytest.raises(DomainError):
            density_closed(3.0, 1.0)

    def test_log_value_at_extreme_t(self):
        d = density_closed(2.0, 1e6)
        # 2 K_0(2000): value underflows nowhere near here, but log must
        # match -2 sqrt(t) + lower order.
        assert abs(d.log_value - (math.log(2.0 * bessel_k0_scaled(2000.0)) - 2000.0)) < 1e-10


class TestDirect:
    def test_exponential_law(self):
        d = density_direct(1.0, 1.0)
        assert abs(d.value - math.exp(-1.0)) < 1e-11
        assert d.method is Method.DIRECT

    def test_bessel_law(self):
        d = density_direct(2.0, 1.0)
        assert abs(d.value - TWO_K0_2) < 1e-10 * TWO_K0_2

    def test_self_refinement_oracle(self):
        # c = 0.5, t = 0.5: no closed form and no shifted route; the
        # oracle is the same integral at doubled half-width and halved
        # base step.
        c, t = 0.5, 0.5
        base = density_direct(c, t)
        log_t = math.log(t)

        def f(z):
            return np.exp((1j * z - 1.0) * log_t + c * log_gamma(1.0 - 1j * z))

        X, n = 80.0, 640
        refined = trapezoid_line(
            f,
            LineContour("horizontal", 0.0, X, X / n),
            QuadSpec(1e-14, 1e-13, 400_000),
        ).value.real / (2.0 * math.pi)
        assert abs(base.value - refined) < 1e-9

    def test_imaginary_residual_small(self):
        # Conjugate symmetry: the imaginary part of the inversion
        # integral is pure noise and lands inside the error estimate.
        for c, t in ((0.7, 0.4), (2.2, 3.0), (1.3, 0.05)):
            log_t = math.log(t)

            def f(z):
                return np.exp((1j * z - 1.0) * log_t + c * log_gamma(1.0 - 1j * z))

            from urbanik_sf.quadrature import truncation_for_density

            X = truncation_for_density(c, t, 1e-13)
            n = max(8, int(math.ceil(X / 0.25)))
            raw = trapezoid_line(
                f, LineContour("horizontal", 0.0, X, X / n), QuadSpec(1e-13, 1e-12, 400_000)
            ).value
            value = raw.real / (2 * math.pi)
            assert abs(raw.imag) / (2 * math.pi) <= 1e-10 * (1.0 + abs(value))

    def test_cancellation_cap(self):
        with pytest.raises(CancellationError):
            density_direct(1.0, 30.0)

    def test_contour_shift_invariance(self):
        # The inversion integral is unchanged on the line Im z = a
        # (holomorphy of the integrand between the lines).
        c, t = 1.5, 2.0
        base = density_direct(c, t).value
        log_t = math.log(t)

        def f(z):
            return np.exp((1j * z - 1.0) * log_t + c * log_gamma(1.0 - 1j * z))

        for a in (0.3, 1.0):
            res = trapezoid_line(
                f,
                LineContour("horizontal", a, 40.0, 0.125),
                QuadSpec(1e-13, 1e-12, 400_000),
            )
            assert abs(res.value.real / (2 * math.pi) - base) < 1e-9


class TestShifted:
    def test_exponential_law_large_t(self):
        d = density_shifted(1.0, 10.0)
        assert abs(d.value - math.exp(-10.0)) <= 1e-10 * math.exp(-10.0)

    def test_bessel_large_t(self):
        d = density_shifted(2.0, 100.0)
        assert abs(d.value - TWO_K0_20) <= 1e-9 * TWO_K0_20

    def test_agrees_with_direct_mid_range(self):
        dd = density_direct(3.0, 8.0)
        ds = density_shifted(3.0, 8.0)
        assert abs(dd.value - ds.value) <= 1e-8 * ds.value

    def test_rejects_t_below_one(self):
        with pytest.raises(DomainError):
            density_shifted(1.0, 0.9)

    def test_huge_t_log_value(self):
        d = density_shifted(0.5, 1e6)
        assert d.value == 0.0  # honest underflow
        # log e_c = -c t^2 + O(log t) for c = 1/2
        assert abs(d.log_value + 0.5e12) / 0.5e12 < 1e-6


class TestAsymptotics:
    def test_c1_exact(self):
        for t in (0.5, 3.0, 50.0):
            a = asympt_large(1.0, t)
            assert abs(a.value - math.exp(-t)) <= 1e-14 * math.exp(-t)

    def test_c2_matches_bessel_asymptotic(self):
        # sqrt(pi) e^{-2 sqrt t} / t^{1/4} vs the K_0 asymptotic oracle.
        t = 1e4
        a = asympt_large(2.0, t)
        x = 2.0 * math.sqrt(t)
        k0_lead = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
        assert abs(a.value - 2.0 * k0_lead) <= 1e-12 * a.value

    def test_large_t_matches_shifted_at_1e6(self):
        r = math.exp(asympt_large(3.0, 1e6).log_value - density_shifted(3.0, 1e6).log_value)
        assert 0.95 <= r <= 1.05

    def test_small_c1_is_one(self):
        for t in (1e-2, 1e-6):
            assert asympt_small(1.0, t).value == 1.0

    def test_small_c2_bessel_defect(self):
        # 2 K_0(2 sqrt t) = Lambda - 2 gamma + o(1): the ratio tends to 1
        # with defect ~ 2 gamma / Lambda.
        t = 1e-8
        lam = -math.log(t)
        a = asympt_small(2.0, t)
        closed = density_closed(2.0, t)
        defect = 1.0 - closed.value / a.value
        assert abs(defect - 2.0 * EULER_GAMMA / lam) < 0.02 * (2.0 * EULER_GAMMA / lam)

    def test_small_c_half_vanishes(self):
        vals = [asympt_small(0.5, t).value for t in (1e-4, 1e-8, 1e-16)]
        assert vals[0] > vals[1] > vals[2] > 0.0
        lam = 16.0 * math.log(10.0)
        assert abs(vals[2] - lam**-0.5 / math.gamma(0.5)) < 1e-12

    def test_small_rejects_t_above_one(self):
        with pytest.raises(DomainError):
            asympt_small(2.0, 1.5)


class TestSaddleData:
    def test_saddle_point_values(self):
        integ = SaddleIntegrand(c=1.7, s=2.0)
        h = 1e-4
        f0 = integ.phase(0.0)[()]
        fp = (integ.phase(h)[()] - integ.phase(-h)[()]) / (2 * h)
        fpp = (integ.phase(h)[()] - 2 * f0 + integ.phase(-h)[()]) / h**2
        assert abs(f0) < 1e-12
        assert abs(fp) < 1e-8
        assert abs(fpp + 1.0) < 1e-7

    def test_phase_series_matches_formula(self):
        # Series and direct formula must agree where they hand over.
        for u in (0.2, 0.25, 0.3, -0.26):
            w = 1.0 - 1j * u
            direct = 1j * u + w * np.log(w)
            assert abs(SaddleIntegrand(1.0, 2.0).phase(u)[()] - direct) < 1e-14

    def test_amplitude_at_origin(self):
        assert SaddleIntegrand(2.4, 3.0).amplitude(0.0)[()] == 1.0

    def test_correction_bound(self):
        integ = SaddleIntegrand(c=2.0, s=5.0)
        us = np.linspace(-20.0, 20.0, 81)
        bound = math.exp(integ.c / (12.0 * integ.s)) - 1.0
        assert np.all(np.abs(integ.correction(us) - 1.0) <= bound + 1e-12)


class TestDispatcher:
    def test_method_selection(self):
        assert density(1.5, 2.0).method is Method.DIRECT
        assert density(1.5, 1e4).method is Method.SHIFTED
        assert density(0.5, 1e-60).method is Method.ASYMPT_SMALL

    def test_positive(self, rng):
        for _ in range(25):
            c = rng.uniform(0.3, 4.0)
            t = 10 ** rng.uniform(-6.0, 6.0)
            assert density(c, t).value >= 0.0

    def test_cross_method_agreement_grid(self):
        # Direct vs shifted on the overlap grid, within the direct
        # route's cancellation domain.
        for c in (0.5, 1.0, 1.5, 2.0, 2.5, 3.0):
            for t in (2.0, 4.0, 8.0):
                if c * t ** (1.0 / c) > CANCELLATION_CAP:
                    continue
                dd = density_direct(c, t)
                ds = density_shifted(c, t)
                assert abs(dd.value - ds.value) <= 1e-7 * ds.value

    def test_closed_form_agreement(self):
        for t in (0.05, 0.7, 2.0, 9.0):
            ref1 = density_closed(1.0, t).value
            ref2 = density_closed(2.0, t).value
            assert abs(density_direct(1.0, t).value - ref1) <= 1e-8 * ref1
            assert abs(density_direct(2.0, t).value - ref2) <= 1e-8 * ref2
            if t > 1.0:
                assert abs(density_shifted(1.0, t).value - ref1) <= 1e-8 * ref1
                assert abs(density_shifted(2.0, t).value - ref2) <= 1e-8 * ref2

    def test_asymptotic_ratio_law_large(self):
        # |density/asympt - 1| * t^{1/c} stays bounded: the witness for
        # the O(t^{-1/c}) error term.
        for c in (0.5, 1.5, 3.0):
            scaled = []
            for t in (1e2, 1e3, 1e4, 1e5):
                r = math.exp(density(c, t).log_value - asympt_large(c, t).log_value)
                scaled.append(abs(r - 1.0) * t ** (1.0 / c))
            assert max(scaled) < 10.0

    def test_asymptotic_ratio_law_small(self):
        for c in (0.5, 1.5, 3.0):
            scaled = []
            for t in (1e-4, 1e-6, 1e-8):
                lam = -math.log(t)
                d = density(c, t)
                scaled.append(abs(math.gamma(c) * d.value * lam ** (1.0 - c) - 1.0) * lam)
            assert max(scaled) < 10.0

    def test_no_route_raises(self):
        with pytest.raises(CancellationError):
            density(40.0, 0.9)

    def test_validation(self):
        with pytest.raises(DomainError):
            density(1.0, 0.0)
        with pytest.raises(DomainError):
            density(-1.0, 1.0)

    def test_err_estimate_covers_true_error(self):
        for c, t in ((1.0, 1.0), (1.0, 10.0), (2.0, 5.0)):
            d = density(c, t)
            truth = density_closed(c, t).value
            assert abs(d.value - truth) <= max(d.abs_err_estimate, 1e-13 * truth)
