"""Piecewise beta-CDF approximation and its closed-form MLEs."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from swapfit.betagof import (
    fit_alpha_beta,
    separation_log_likelihood,
    volodin_cdf,
    volodin_pdf,
)
from swapfit.errors import DomainError

shapes = st.floats(0.05, 0.95)


class TestCdf:
    def test_endpoints(self):
        assert volodin_cdf(0.0, 0.3, 0.7) == 0.0
        assert volodin_cdf(1.0, 0.3, 0.7) == 1.0

    @given(shapes, shapes)
    def test_branches_agree_at_half(self, a, b):
        gamma = a / (a + b)
        lower = (1.0 - gamma) * 1.0 ** a
        upper = 1.0 - gamma * 1.0 ** b
        assert lower == pytest.approx(upper)
        assert volodin_cdf(0.5, a, b) == pytest.approx(1.0 - gamma)

    @given(shapes, shapes)
    @settings(max_examples=50)
    def test_monotone(self, a, b):
        xs = np.linspace(0.0, 1.0, 101)
        vals = [volodin_cdf(float(x), a, b) for x in xs]
        assert all(v2 >= v1 - 1e-12 for v1, v2 in zip(vals, vals[1:]))

    def test_domain_error(self):
        with pytest.raises(DomainError):
            volodin_cdf(-0.1, 0.3, 0.3)
        with pytest.raises(DomainError):
            volodin_cdf(1.1, 0.3, 0.3)


class TestPdf:
    @given(shapes, shapes, st.floats(0.01, 0.99))
    @settings(max_examples=200)
    def test_matches_cdf_derivative(self, a, b, x):
        h = 1e-7
        lo, hi = max(x - h, 0.0), min(x + h, 1.0)
        numeric = (volodin_cdf(hi, a, b) - volodin_cdf(lo, a, b)) / (hi - lo)
        assert volodin_pdf(x, a, b) == pytest.approx(numeric, rel=1e-4, abs=1e-6)

    @given(shapes, shapes)
    @settings(max_examples=30, deadline=None)
    def test_integrates_to_one(self, a, b):
        total, _ = quad(volodin_pdf, 0.0, 0.5, args=(a, b), limit=200)
        upper, _ = quad(volodin_pdf, 0.5, 1.0, args=(a, b), limit=200)
        assert total + upper == pytest.approx(1.0, abs=1e-6)

    def test_endpoint_rejected(self):
        with pytest.raises(DomainError):
            volodin_pdf(0.0, 0.3, 0.3)


class TestFit:
    def test_closed_form_matches_continuous_optimum(self):
        rng = np.random.default_rng(4)
        probs = np.concatenate([rng.beta(0.3, 0.9, 120), rng.beta(3.0, 0.4, 80)])
        rep = fit_alpha_beta(probs)

        def neg(alpha):
            return -separation_log_likelihood(probs, alpha, rep.beta_hat, rep.gamma)

        res = minimize_scalar(neg, bounds=(1e-3, 5.0), method="bounded")
        assert rep.alpha_hat == pytest.approx(res.x, abs=1e-4)

    def test_gamma_is_upper_fraction(self):
        rep = fit_alpha_beta([0.1, 0.2, 0.6, 0.9])
        assert rep.gamma == pytest.approx(0.5)
        assert (rep.n0, rep.n1) == (2, 2)
        assert rep.eps_sum == pytest.approx(rep.alpha_hat + rep.beta_hat)

    def test_split_at_half_goes_lower(self):
        rep = fit_alpha_beta([0.5, 0.5, 0.9])
        assert rep.n0 == 2 and rep.n1 == 1

    def test_one_sided_partial_report(self):
        rep = fit_alpha_beta([0.1, 0.2, 0.3])
        assert rep.beta_hat is None and rep.eps_sum is None
        assert rep.alpha_hat is not None and rep.gamma == 0.0

    def test_clamp_counted(self):
        rep = fit_alpha_beta([0.0, 1.0, 0.4, 0.6])
        assert rep.clamp_activations == 2
        assert np.isfinite(rep.alpha_hat) and np.isfinite(rep.beta_hat)

    def test_histogram_sums_to_n(self):
        probs = np.linspace(0.01, 0.99, 57)
        rep = fit_alpha_beta(probs)
        assert sum(rep.histogram) == 57
        assert len(rep.histogram) == 20

    def test_validation(self):
        with pytest.raises(DomainError):
            fit_alpha_beta([0.4])
        with pytest.raises(DomainError):
            fit_alpha_beta([0.4, 1.4])

    def test_small_shapes_mean_confident_posteriors(self):
        rng = np.random.default_rng(8)
        confident = np.concatenate([rng.beta(0.05, 1.0, 100), rng.beta(1.0, 0.05, 100)])
        vague = rng.beta(5.0, 5.0, 200) * 0.9998 + 0.0001
        assert fit_alpha_beta(confident).alpha_hat < fit_alpha_beta(vague).alpha_hat
