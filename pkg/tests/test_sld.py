import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import refvals as rv
from sldcorr import (
    RHO_CONVEXITY_LIMIT,
    DomainError,
    Model,
    Scenario,
    convexity_profile,
    mgf_exact,
    ncgf_limit_gaussian,
    ncgf_limit_spherical,
    r0_of_lambda,
    rate_function,
    rate_legendre_numeric,
    rate_second_derivative,
    saddle,
    tail_sld,
)
from sldcorr.sld import gbar_rho, hbar_root

SPH_CENT = Scenario(Model.SPHERICAL_CENTERED)
SPH_KNOWN = Scenario(Model.SPHERICAL_KNOWN_MEAN)
GAUSS_KNOWN0 = Scenario(Model.GAUSSIAN_KNOWN_RHO0)


def gauss(rho):
    return Scenario(Model.GAUSSIAN_CENTERED, rho)


class TestR0:
    def test_removable_singularity(self):
        assert r0_of_lambda(0.0) == 0.0

    def test_golden_ratio_point(self):
        assert r0_of_lambda(1.0) == pytest.approx(rv.R0_AT_1, rel=1e-15)

    def test_small_lambda_stable(self):
        # the cancellation-prone form (-1 + sqrt(1+4 lam^2))/(2 lam) loses
        # digits near 0; the implementation must not
        lam = 1e-9
        assert r0_of_lambda(lam) == pytest.approx(lam, rel=1e-12)

    @given(st.floats(-30.0, 30.0))
    @settings(max_examples=60, deadline=None)
    def test_inverts_tilt_equation(self, lam):
        r = r0_of_lambda(lam)
        assert -1.0 < r < 1.0
        assert lam == pytest.approx(r / (1.0 - r * r), abs=1e-9, rel=1e-9)


class TestNcgfSpherical:
    def test_zero(self):
        e = ncgf_limit_spherical(0.0)
        assert e.limit == 0.0
        assert e.correction == 0.0

    def test_at_one(self):
        e = ncgf_limit_spherical(1.0)
        assert e.limit == pytest.approx(rv.L_SPH_AT_1, rel=1e-14)
        assert e.correction == pytest.approx(rv.CORR_CENTERED_AT_1, rel=1e-13)

    def test_known_mean_correction(self):
        e = ncgf_limit_spherical(1.0, known_mean=True)
        assert e.limit == pytest.approx(rv.L_SPH_AT_1, rel=1e-14)
        assert e.correction == pytest.approx(rv.CORR_KNOWN_AT_1, rel=1e-13)

    def test_limit_matches_quadrature(self):
        got = ncgf_limit_spherical(1.0).limit
        assert abs(got - mgf_exact(SPH_CENT, 400, 1.0)) <= 5e-3


class TestNcgfGaussian:
    def test_zero_tilt(self):
        e = ncgf_limit_gaussian(0.0, 0.4)
        assert e.limit == pytest.approx(0.0, abs=1e-12)

    def test_reduces_to_spherical(self):
        for lam in (0.3, 1.0, 2.5):
            got = ncgf_limit_gaussian(lam, 0.0)
            want = ncgf_limit_spherical(lam)
            assert got.limit == pytest.approx(want.limit, rel=1e-11)
            assert got.correction == pytest.approx(want.correction, rel=1e-10)

    def test_root_is_stationary(self):
        lam, rho = 0.7, 0.5
        r0 = hbar_root(lam, rho)
        resid = lam + rho / (1.0 - rho * r0) - r0 / (1.0 - r0 * r0)
        assert abs(resid) <= 1e-11 * (1.0 + lam)


class TestSaddle:
    def test_spherical_closed_forms(self):
        sp = saddle(SPH_CENT, 0.5)
        assert sp.lambda_c == pytest.approx(2.0 / 3.0, rel=1e-15)
        assert sp.sigma_sq == pytest.approx(0.45, rel=1e-14)
        assert sp.rate == pytest.approx(rv.RATE_SPH_AT_HALF, rel=1e-14)
        assert sp.r0 == 0.5

    def test_gaussian_spot(self):
        sp = saddle(gauss(0.3), 0.6)
        assert sp.lambda_c == pytest.approx(rv.GAUSS_LAMBDA_03_06, rel=1e-14)
        assert sp.rate == pytest.approx(rv.GAUSS_RATE_03_06, rel=1e-13)

    def test_gaussian_rho_zero_equals_spherical(self):
        for c in (0.2, 0.5, 0.8):
            a = saddle(gauss(0.0), c)
            b = saddle(SPH_CENT, c)
            assert a.lambda_c == b.lambda_c
            assert a.sigma_sq == pytest.approx(b.sigma_sq, rel=1e-14)
            assert a.rate == pytest.approx(b.rate, rel=1e-14)

    def test_rate_nonnegative_and_consistent(self):
        for s in (SPH_CENT, SPH_KNOWN, gauss(0.3), GAUSS_KNOWN0):
            for c in np.arange(0.35, 0.95, 0.1):
                sp = saddle(s, float(c))
                assert sp.rate >= 0.0
                assert sp.sigma_sq > 0.0
                assert sp.lambda_c > 0.0

    def test_legendre_identity(self):
        # rate = c*lam_c - L(lam_c) at the saddle tilt
        for c in np.arange(0.1, 0.95, 0.1):
            c = float(c)
            sp = saddle(SPH_CENT, c)
            assert sp.rate == pytest.approx(
                c * sp.lambda_c - ncgf_limit_spherical(sp.lambda_c).limit, abs=1e-12
            )
        rho = 0.3
        for c in (0.4, 0.6, 0.8):
            sp = saddle(gauss(rho), c)
            L = ncgf_limit_gaussian(sp.lambda_c, rho).limit
            assert sp.rate == pytest.approx(c * sp.lambda_c - L, abs=1e-10)

    def test_tilt_derivative_consistency(self):
        # finite-difference check of L'(lam_c) = c
        eps = 1e-5
        for s, Lfun in [
            (SPH_CENT, lambda lam: ncgf_limit_spherical(lam).limit),
            (gauss(0.3), lambda lam: ncgf_limit_gaussian(lam, 0.3).limit),
        ]:
            for c in (0.4, 0.6, 0.8):
                sp = saddle(s, c)
                fd = (Lfun(sp.lambda_c + eps) - Lfun(sp.lambda_c - eps)) / (2.0 * eps)
                assert fd == pytest.approx(c, abs=1e-6)

    def test_sigma_sq_consistency(self):
        # sigma^2 = L''(lam_c), checked as a centered difference of L' = r0
        eps = 1e-5
        for c in (0.3, 0.5, 0.7):
            sp = saddle(SPH_CENT, c)
            fd = (r0_of_lambda(sp.lambda_c + eps) - r0_of_lambda(sp.lambda_c - eps)) / (2.0 * eps)
            assert fd == pytest.approx(sp.sigma_sq, abs=1e-5)
        rho = 0.3
        for c in (0.5, 0.7):
            sp = saddle(gauss(rho), c)
            fd = (hbar_root(sp.lambda_c + eps, rho) - hbar_root(sp.lambda_c - eps, rho)) / (2.0 * eps)
            assert fd == pytest.approx(sp.sigma_sq, abs=1e-5)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            saddle(SPH_CENT, 0.0)
        with pytest.raises(DomainError):
            saddle(SPH_CENT, 1.0)
        with pytest.raises(DomainError):
            saddle(gauss(0.5), 0.4)  # c <= rho
        with pytest.raises(DomainError):
            saddle(gauss(0.9), 0.95)  # beyond the concavity bound


class TestTailSld:
    def test_centered_closed_form(self):
        est = tail_sld(SPH_CENT, 20, 0.5)
        assert est.log_prob == pytest.approx(math.log(rv.TAIL_SLD_CENT_20_05), abs=1e-13)
        # decomposition identity
        assert est.log_prob == est.leading + est.log_prefactor
        assert est.leading == pytest.approx(-20.0 * rv.RATE_SPH_AT_HALF, rel=1e-14)
        assert est.method == "sld"

    def test_known_mean_closed_form(self):
        est = tail_sld(SPH_KNOWN, 20, 0.5)
        assert est.log_prob == pytest.approx(math.log(rv.TAIL_SLD_KNOWN_20_05), abs=1e-13)

    def test_gaussian_known_rho0_equals_spherical_known(self):
        for n in (10, 50):
            for c in (0.3, 0.7):
                assert tail_sld(GAUSS_KNOWN0, n, c).log_prob == tail_sld(SPH_KNOWN, n, c).log_prob

    def test_gaussian_rho_zero_equals_spherical_centered(self):
        for n in (10, 100):
            for c in (0.2, 0.5, 0.8):
                a = tail_sld(gauss(0.0), n, c).log_prob
                b = tail_sld(SPH_CENT, n, c).log_prob
                assert a == pytest.approx(b, abs=1e-12)

    def test_prefactor_identity_centered(self):
        # exp of the n.c.g.f. 1/n coefficient at the saddle tilt equals the
        # algebraic prefactor 1/((1-c^2) sqrt(1+c^2))
        for c in np.arange(0.05, 1.0, 0.05):
            c = float(c)
            lam_c = c / (1.0 - c * c)
            lhs = math.exp(ncgf_limit_spherical(lam_c).correction)
            rhs = 1.0 / ((1.0 - c * c) * math.sqrt(1.0 + c * c))
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_prefactor_identity_known(self):
        for c in np.arange(0.05, 1.0, 0.05):
            c = float(c)
            lam_c = c / (1.0 - c * c)
            lhs = math.exp(ncgf_limit_spherical(lam_c, known_mean=True).correction)
            rhs = 1.0 / math.sqrt((1.0 - c * c) * (1.0 + c * c))
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_gaussian_prefactor_is_ncgf_correction(self):
        rho, c, n = 0.3, 0.6, 40
        est = tail_sld(gauss(rho), n, c)
        sp = saddle(gauss(rho), c)
        corr = ncgf_limit_gaussian(sp.lambda_c, rho).correction
        want = corr - math.log(sp.lambda_c * math.sqrt(sp.sigma_sq) * math.sqrt(2 * math.pi * n))
        assert est.log_prefactor == pytest.approx(want, abs=1e-9)

    def test_rejects_beyond_concavity(self):
        with pytest.raises(DomainError, match="0.84748"):
            tail_sld(gauss(0.9), 30, 0.95)


class TestRateFunction:
    def test_spherical_values(self):
        assert rate_function(SPH_CENT, 0.0) == 0.0
        assert rate_function(SPH_CENT, 0.5) == pytest.approx(rv.RATE_SPH_AT_HALF, rel=1e-14)

    def test_gaussian_zero_at_mean(self):
        for rho in (0.0, 0.3, 0.8, -0.6):
            assert rate_function(gauss(rho), rho) == pytest.approx(0.0, abs=1e-14)

    def test_numeric_legendre_matches(self):
        for s, ys in [
            (SPH_CENT, (-0.5, 0.0, 0.5, 0.9)),
            (SPH_KNOWN, (0.3,)),
            (gauss(0.3), (-0.4, 0.0, 0.3, 0.6, 0.9)),
        ]:
            for y in ys:
                got = rate_legendre_numeric(s, y)
                assert got == pytest.approx(rate_function(s, y), abs=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            rate_function(SPH_CENT, 1.0)


class TestConvexity:
    def test_spherical_always_convex(self):
        _, dd = convexity_profile(0.0)
        assert np.all(dd > 0.0)

    def test_below_threshold_convex(self):
        _, dd = convexity_profile(RHO_CONVEXITY_LIMIT - 0.1)
        assert dd.min() >= 0.0

    def test_above_threshold_not_convex(self):
        _, dd = convexity_profile(RHO_CONVEXITY_LIMIT + 0.1)
        assert dd.min() < 0.0

    def test_explicit_grid(self):
        y = np.array([-0.5, 0.0, 0.5])
        got_y, got_dd = convexity_profile(0.3, y)
        np.testing.assert_array_equal(got_y, y)
        np.testing.assert_allclose(got_dd, rate_second_derivative(0.3, y))

    def test_second_derivative_matches_finite_difference(self):
        rho, y, eps = 0.4, 0.25, 1e-5
        s = gauss(rho)
        fd = (
            rate_function(s, y + eps) - 2.0 * rate_function(s, y) + rate_function(s, y - eps)
        ) / eps**2
        assert rate_second_derivative(rho, y) == pytest.approx(fd, rel=1e-5)

    def test_threshold_constant(self):
        assert RHO_CONVEXITY_LIMIT == pytest.approx(rv.RHO_CONVEXITY, rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            convexity_profile(1.0)


class TestOracleConvergenceLight:
    def test_ratio_improves_with_n(self):
        # one (scenario, c) pair as a quick regression guard; the full
        # sweep lives in the acceptance suite
        from sldcorr import tail_exact

        errs = []
        for n in (20, 80, 320):
            ratio = math.exp(tail_sld(SPH_CENT, n, 0.5).log_prob - tail_exact(SPH_CENT, n, 0.5).log_value)
            errs.append(abs(ratio - 1.0))
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 0.01
