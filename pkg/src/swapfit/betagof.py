"""Separation quality of a fit, measured through a piecewise beta-CDF model.

Posterior probabilities near 0 or 1 mean the latent direction is decided
with confidence; small fitted shape parameters certify that. The piecewise
closed-form CDF approximation (accurate for small shapes) makes the
maximum-likelihood estimates available in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_PROB_CLAMP = 1e-12
_HIST_BINS = 20


@dataclass(frozen=True)
class GofReport:
    alpha_hat: float | None
    beta_hat: float | None
    gamma: float
    eps_sum: float | None
    n0: int
    n1: int
    histogram: tuple[int, ...]
    clamp_activations: int

    @property
    def n(self) -> int:
        return self.n0 + self.n1

    def to_json_dict(self) -> dict:
        return {
            "alpha_hat": self.alpha_hat, "beta_hat": self.beta_hat,
            "gamma": self.gamma, "eps_sum": self.eps_sum,
            "n0": self.n0, "n1": self.n1,
            "histogram": list(self.histogram),
            "clamp_activations": self.clamp_activations,
        }


def _check_unit(x: float) -> None:
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"argument must lie in [0, 1], got {x}")


def volodin_cdf(x: float, alpha: float, beta: float) -> float:
    """Piecewise beta-CDF approximation; both branches agree at x = 0.5."""
    _check_unit(x)
    gamma = alpha / (alpha + beta)
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    if x <= 0.5:
        return (1.0 - gamma) * (x / (1.0 - x)) ** alpha
    return 1.0 - gamma * ((1.0 - x) / x) ** beta


def volodin_pdf(x: float, alpha: float, beta: float) -> float:
    """Derivative of the piecewise CDF; the lower branch covers x = 0.5."""
    _check_unit(x)
    if x in (0.0, 1.0):
        raise DomainError("density undefined at the endpoints")
    gamma = alpha / (alpha + beta)
    if x <= 0.5:
        return (1.0 - gamma) * alpha * (x / (1.0 - x)) ** (alpha - 1.0) / (1.0 - x) ** 2
    return gamma * beta * ((1.0 - x) / x) ** (beta - 1.0) / x ** 2


def fit_alpha_beta(probs) -> GofReport:
    """Closed-form shape MLEs from a sample of probabilities.

    The sample splits at 0.5 (values <= 0.5 to the lower group); each group
    estimates its own shape parameter. A one-sided sample yields a partial
    report with the missing estimate absent. Values are clamped away from
    the endpoints before taking logs; activations are counted.
    """
    probs = np.asarray(probs, dtype=float)
    if probs.size < 2:
        raise DomainError("need at least two probabilities")
    if np.any(probs < 0) or np.any(probs > 1):
        raise DomainError("probabilities must lie in [0, 1]")
    clamps = int(np.sum((probs < _PROB_CLAMP) | (probs > 1.0 - _PROB_CLAMP)))
    p = np.clip(probs, _PROB_CLAMP, 1.0 - _PROB_CLAMP)
    lower = p[probs <= 0.5]
    upper = p[probs > 0.5]
    n0, n1 = lower.size, upper.size
    # A group sitting exactly at 0.5 has an unbounded shape estimate.
    def _shape(count, log_sum):
        if not count:
            return None
        return float(count / log_sum) if log_sum > 0 else math.inf

    alpha = _shape(n0, float(np.sum(np.log((1.0 - lower) / lower))))
    beta = _shape(n1, float(np.sum(np.log(upper / (1.0 - upper)))))
    eps = alpha + beta if (alpha is not None and beta is not None) else None
    hist, _ = np.histogram(probs, bins=_HIST_BINS, range=(0.0, 1.0))
    return GofReport(
        alpha_hat=alpha, beta_hat=beta,
        gamma=n1 / probs.size, eps_sum=eps,
        n0=n0, n1=n1,
        histogram=tuple(int(c) for c in hist),
        clamp_activations=clamps,
    )


def separation_log_likelihood(probs, alpha: float, beta: float, gamma: float) -> float:
    """Log-likelihood of the piecewise density with the mixing mass fixed.

    Used by the grid-search oracle that cross-checks the closed-form MLEs.
    """
    probs = np.asarray(probs, dtype=float)
    p = np.clip(probs, _PROB_CLAMP, 1.0 - _PROB_CLAMP)
    lower = p[probs <= 0.5]
    upper = p[probs > 0.5]
    total = 0.0
    if lower.size:
        total += float(np.sum(
            math.log(1.0 - gamma) - 2.0 * np.log(1.0 - lower)
            + math.log(alpha) + (alpha - 1.0) * np.log(lower / (1.0 - lower))))
    if upper.size:
        total += float(np.sum(
            math.log(gamma) - 2.0 * np.log(upper)
            + math.log(beta) + (beta - 1.0) * np.log((1.0 - upper) / upper)))
    return total
