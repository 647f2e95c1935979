"""Synthetic generation and the brute-force/grid oracles."""
import numpy as np
import pytest

from swapfit.core import SwapConfig, complete_log_likelihood, run_swap
from swapfit.densities import RateEstimate, fit_exponential
from swapfit.errors import TooLargeError
from swapfit.betagof import fit_alpha_beta, separation_log_likelihood
from swapfit.models import LINEAR, QUADRATIC, ModelSpec, forward
from swapfit.synthetic import (
    SyntheticTruth,
    brute_force_best_assignment,
    generate,
    grid_mle_beta,
    profile_state,
)


def small_truth(seed, n=8, family=LINEAR):
    rng = np.random.default_rng(seed)
    model = (ModelSpec(LINEAR, (1.5, 0.4)) if family == LINEAR
             else ModelSpec(QUADRATIC, (0.3, 1.0, 0.2)))
    z = tuple(int(v) for v in rng.integers(0, 2, n))
    return SyntheticTruth(model=model, z_true=z, sigma0_sq=0.25,
                          sigma1_sq=0.0016, seed=seed)


class TestGenerate:
    def test_deterministic(self):
        t = small_truth(3)
        a = generate(t, 8, x_rate=0.5, y_rate=0.3)
        b = generate(t, 8, x_rate=0.5, y_rate=0.3)
        assert a.x == b.x and a.y == b.y

    def test_forward_points_sit_near_curve(self):
        t = SyntheticTruth(model=ModelSpec(LINEAR, (2.0, 1.0)),
                           z_true=(1,) * 50, sigma0_sq=0.04, sigma1_sq=0.0,
                           seed=1)
        pair = generate(t, 50, x_rate=0.5, y_rate=0.3)
        np.testing.assert_allclose(pair.y, forward(t.model, np.asarray(pair.x)),
                                   atol=1e-12)

    def test_positivity(self):
        t = small_truth(5, n=40)
        pair = generate(t, 40, x_rate=0.5, y_rate=0.2)
        assert min(pair.x) > 0
        assert len(pair.x) == 40

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            generate(small_truth(1, n=8), 9, x_rate=1.0, y_rate=1.0)


class TestProfileState:
    def test_variances_are_fixed_point(self):
        t = small_truth(7, n=20)
        pair = generate(t, 20, x_rate=0.5, y_rate=0.3)
        state = profile_state(pair, t.z_true, LINEAR)
        from swapfit.core import update_variances
        s0, s1, _ = update_variances(pair, t.z_true, state.model, 1e-12,
                                     prev=(state.sigma0_sq, state.sigma1_sq))
        assert s0 == pytest.approx(state.sigma0_sq, rel=1e-9)
        assert s1 == pytest.approx(state.sigma1_sq, rel=1e-9)


class TestBruteForce:
    def test_cap(self):
        t = small_truth(2, n=13)
        pair = generate(t, 13, x_rate=0.5, y_rate=0.3)
        with pytest.raises(TooLargeError):
            brute_force_best_assignment(pair, LINEAR, RateEstimate(0.5, 13),
                                        RateEstimate(0.3, 13))

    def test_optimum_beats_truth_assignment(self):
        t = small_truth(11, n=8)
        pair = generate(t, 8, x_rate=0.5, y_rate=0.3)
        hx, hy = fit_exponential(pair.x), fit_exponential(pair.y)
        z_star, best = brute_force_best_assignment(pair, LINEAR, hx, hy)
        truth_ll = complete_log_likelihood(
            pair, profile_state(pair, t.z_true, LINEAR), hx, hy)
        assert best >= truth_ll - 1e-9
        assert len(z_star) == 8

    def test_run_swap_cannot_beat_enumeration(self):
        t = small_truth(12, n=8)
        pair = generate(t, 8, x_rate=0.5, y_rate=0.3)
        hx, hy = fit_exponential(pair.x), fit_exponential(pair.y)
        _, best = brute_force_best_assignment(pair, LINEAR, hx, hy)
        fit = run_swap(pair, SwapConfig(variant="gmm", family=LINEAR,
                                        restarts=10), hx, hy)
        attained = complete_log_likelihood(pair, fit.final, hx, hy)
        assert attained <= best + 1e-6


class TestGridMle:
    def test_agrees_with_closed_form(self):
        rng = np.random.default_rng(21)
        probs = np.concatenate([rng.beta(0.4, 1.2, 60), rng.beta(1.5, 0.5, 40)])
        rep = fit_alpha_beta(probs)
        alpha_g, beta_g = grid_mle_beta(probs, step=1e-3)
        assert abs(alpha_g - rep.alpha_hat) <= 1e-3 + 1e-12
        assert abs(beta_g - rep.beta_hat) <= 1e-3 + 1e-12

    def test_grid_point_is_likelihood_argmax_on_grid(self):
        rng = np.random.default_rng(22)
        probs = rng.beta(0.5, 0.5, 80)
        rep = fit_alpha_beta(probs)
        alpha_g, beta_g = grid_mle_beta(probs, step=0.01)
        best = separation_log_likelihood(probs, alpha_g, beta_g, rep.gamma)
        for da in (-0.01, 0.01):
            assert separation_log_likelihood(
                probs, alpha_g + da, beta_g, rep.gamma) <= best + 1e-12
