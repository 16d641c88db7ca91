import math

import numpy as np
import pytest
from scipy.optimize import minimize, minimize_scalar

from nilelab.estimators import (h_star, h_star_vector, khan_coefficients,
                                khan_linear, nile_equivariant,
                                nile_equivariant_star, nile_mle,
                                normalcv_mle, pitman_midrange, s_mean_factor)
from nilelab.families import Kind, nile, sample
from nilelab.statistics import InsufficientSampleError, SufficientSummary, sufficient

# true value of E_1(ybar | W=1) at n=1 (Bessel ratio K_1(2)/K_0(2))
COND_MEAN_W1_N1 = 1.2280369298189078


def _nile_summary(xbar, ybar, n=1):
    return SufficientSummary(Kind.NILE, (xbar, ybar), n)


class TestNileMLE:
    def test_values(self):
        assert nile_mle(_nile_summary(2.0, 8.0)) == pytest.approx(2.0)
        assert nile_mle(_nile_summary(1.0, 1.0)) == pytest.approx(1.0)

    def test_scaling(self):
        assert nile_mle(_nile_summary(2.0 / 3.0, 24.0)) == pytest.approx(6.0)

    def test_equivariance_machine_precision(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            xbar, ybar = rng.uniform(0.05, 20.0, size=2)
            base = nile_mle(_nile_summary(xbar, ybar))
            for lam in (0.1, 0.5, 2.0, 10.0):
                scaled = nile_mle(_nile_summary(xbar / lam, ybar * lam))
                assert scaled == pytest.approx(lam * base, rel=1e-14)


class TestNileEquivariant:
    def test_h_one(self):
        assert nile_equivariant(_nile_summary(2.0, 3.0), lambda w: 1.0) == 3.0

    def test_h_inverse_sqrt_reproduces_mle(self):
        assert nile_equivariant(_nile_summary(2.0, 8.0),
                                lambda w: 1.0 / math.sqrt(w)) == pytest.approx(2.0)

    def test_rejects_nonpositive_h(self):
        with pytest.raises(ValueError):
            nile_equivariant(_nile_summary(1.0, 1.0), lambda w: -1.0)

    def test_equivariance_any_h(self):
        h = lambda w: 1.0 / (1.0 + w)
        rng = np.random.default_rng(22)
        for _ in range(100):
            xbar, ybar = rng.uniform(0.05, 20.0, size=2)
            base = nile_equivariant(_nile_summary(xbar, ybar), h)
            for lam in (0.1, 0.5, 2.0, 10.0):
                scaled = nile_equivariant(_nile_summary(xbar / lam, ybar * lam), h)
                assert scaled == pytest.approx(lam * base, rel=1e-14)


class TestHStar:
    def test_anchor(self):
        assert h_star(1.0, 1) == pytest.approx(1.0 / COND_MEAN_W1_N1, rel=1e-9)
        assert nile_equivariant_star(_nile_summary(1.0, 1.0)) == pytest.approx(
            1.0 / COND_MEAN_W1_N1, rel=1e-9)

    def test_large_w_asymptote(self):
        # h*(w) ~ 1/sqrt(w) since K_1/K_0 -> 1
        assert abs(h_star(100.0, 1) * 10.0 - 1.0) < 0.06

    def test_vectorized_matches_scalar(self):
        ws = np.geomspace(0.01, 100.0, 20)
        vec = h_star_vector(ws, 3)
        for w, v in zip(ws, vec):
            assert v == pytest.approx(h_star(float(w), 3), rel=1e-12)

    def test_star_equivariance_machine_precision(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            xbar, ybar = rng.uniform(0.05, 20.0, size=2)
            base = nile_equivariant_star(_nile_summary(xbar, ybar, n=2))
            for lam in (0.1, 0.5, 2.0, 10.0):
                scaled = nile_equivariant_star(_nile_summary(xbar / lam, ybar * lam, n=2))
                assert scaled == pytest.approx(lam * base, rel=1e-14)

    def test_unbiased_by_monte_carlo(self):
        theta, n, N = 2.0, 5, 100_000
        rng = np.random.default_rng(24)
        x = rng.exponential(1.0 / theta, (N, n)).mean(axis=1)
        y = rng.exponential(theta, (N, n)).mean(axis=1)
        est = y * h_star_vector(x * y, n)
        se = est.std(ddof=1) / math.sqrt(N)
        assert abs(est.mean() - theta) < 3 * se


class TestNormalCVMLE:
    def test_single_observation(self):
        assert normalcv_mle([1.0], 1.0) == pytest.approx((math.sqrt(5) - 1) / 2)

    def test_constant_sample_matches_single(self):
        one = normalcv_mle([1.0], 1.0)
        assert normalcv_mle([1.0] * 7, 1.0) == pytest.approx(one)

    def test_matches_numeric_likelihood_maximum(self):
        def nll(t, x, c):
            return x.size * math.log(t) + np.sum((x - t) ** 2) / (2 * c * c * t * t)

        rng = np.random.default_rng(25)
        for _ in range(100):
            n = int(rng.integers(2, 30))
            c = rng.uniform(0.2, 2.0)
            theta = rng.uniform(0.2, 5.0)
            x = theta + c * theta * rng.standard_normal(n)
            mle = normalcv_mle(x, c)
            res = minimize_scalar(nll, bounds=(1e-8, 200.0), args=(x, c),
                                  method="bounded", options={"xatol": 1e-12})
            # bounded scalar minimization resolves the flat optimum to ~1e-8
            assert mle == pytest.approx(res.x, abs=1e-7)

    def test_consistency(self):
        rng = np.random.default_rng(26)
        theta, c, n = 2.0, 0.5, 10_000
        x = theta + c * theta * rng.standard_normal(n)
        assert normalcv_mle(x, c) == pytest.approx(theta, rel=0.03)

    def test_all_zero_rejected(self):
        with pytest.raises(Exception):
            normalcv_mle([0.0, 0.0], 1.0)


class TestKhanLinear:
    def test_b2(self):
        assert s_mean_factor(2) == pytest.approx(math.sqrt(2.0 / math.pi), rel=1e-12)

    def test_needs_two(self):
        with pytest.raises(InsufficientSampleError):
            khan_coefficients(1, 1.0)

    @pytest.mark.parametrize("n,c", [(2, 1.0), (5, 0.5), (10, 1.0), (30, 2.0)])
    def test_matches_constrained_minimizer(self, n, c):
        bn = s_mean_factor(n)
        beta = c * bn

        def obj(ab):
            return ab[0] ** 2 / n + ab[1] ** 2 * (1.0 - bn * bn)

        res = minimize(obj, [0.5, 0.5], tol=1e-16,
                       constraints=[{"type": "eq",
                                     "fun": lambda ab: ab[0] + beta * ab[1] - 1.0}])
        a, b = khan_coefficients(n, c)
        assert a == pytest.approx(res.x[0], abs=1e-8)
        assert b == pytest.approx(res.x[1], abs=1e-8)

    def test_unbiased_and_beats_mean(self):
        theta, c, n, N = 1.0, 1.0, 10, 100_000
        rng = np.random.default_rng(27)
        x = theta + c * theta * rng.standard_normal((N, n))
        xbar = x.mean(axis=1)
        s = x.std(axis=1, ddof=1)
        a, b = khan_coefficients(n, c)
        est = a * xbar + b * s
        se = est.std(ddof=1) / math.sqrt(N)
        assert abs(est.mean() - theta) < 3 * se
        assert est.var(ddof=1) < c * c * theta * theta / n  # Var(xbar) = 0.1

    def test_scalar_interface(self):
        from nilelab.families import normal_cv
        from nilelab.families import sample as fsample
        obs = fsample(normal_cv(1.0), 10, np.random.default_rng(0))
        summ = sufficient(obs)
        a, b = khan_coefficients(10, 1.0)
        assert khan_linear(summ, 1.0) == pytest.approx(
            a * summ.components[0] + b * summ.components[1])


class TestPitmanMidrange:
    def test_value(self):
        s = SufficientSummary(Kind.UNIFORM_LOCATION, (-0.4, 0.9), 10)
        assert pitman_midrange(s) == pytest.approx(0.25)

    def test_translation_equivariance(self):
        s = SufficientSummary(Kind.UNIFORM_LOCATION, (-0.4, 0.9), 10)
        s2 = SufficientSummary(Kind.UNIFORM_LOCATION, (-0.4 + 5.0, 0.9 + 5.0), 10)
        assert pitman_midrange(s2) == pytest.approx(pitman_midrange(s) + 5.0)

    def test_variance_order_statistics_formula(self):
        n, N = 20, 100_000
        rng = np.random.default_rng(28)
        x = rng.uniform(-1.0, 1.0, (N, n))
        mid = 0.5 * (x.min(axis=1) + x.max(axis=1))
        expect = 2.0 / ((n + 1) * (n + 2))
        assert mid.var(ddof=1) == pytest.approx(expect, rel=0.05)


class TestNormalizedRiskIsThetaFree:
    def test_mle_normalized_risk_constant(self):
        # E(theta_hat/theta - 1)^2 must not depend on theta for an
        # equivariant estimator
        n, N = 5, 50_000
        risks, ses = [], []
        for i, theta in enumerate((0.5, 1.0, 2.0)):
            rng = np.random.default_rng(29)  # same substream: common random numbers
            x = rng.exponential(1.0 / theta, (N, n)).mean(axis=1)
            y = rng.exponential(theta, (N, n)).mean(axis=1)
            r = (np.sqrt(y / x) / theta - 1.0) ** 2
            risks.append(r.mean())
            ses.append(r.std(ddof=1) / math.sqrt(N))
        for i in range(3):
            for j in range(i + 1, 3):
                z = (risks[i] - risks[j]) / math.hypot(ses[i], ses[j])
                assert abs(z) < 3.0
