"""Exponential marginal fits and the one-sample Kolmogorov-Smirnov check."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveSampleError


@dataclass(frozen=True)
class RateEstimate:
    """Exponential rate fitted by 1/mean; evaluates the log density."""

    lam: float
    n: int

    def log_density(self, v):
        v = np.asarray(v, dtype=float)
        out = np.where(v >= 0, math.log(self.lam) - self.lam * v, -np.inf)
        return float(out) if out.ndim == 0 else out

    def density(self, v):
        return np.exp(self.log_density(v))


@dataclass(frozen=True)
class KsResult:
    d_statistic: float
    p_value: float
    n: int


def fit_exponential(sample) -> RateEstimate:
    sample = np.asarray(sample, dtype=float)
    if sample.size < 1 or np.any(sample <= 0) or not np.all(np.isfinite(sample)):
        raise NonPositiveSampleError("sample must be nonempty, finite and strictly positive")
    return RateEstimate(lam=1.0 / float(np.mean(sample)), n=int(sample.size))


def kolmogorov_p(d: float, n: int) -> float:
    """Asymptotic Kolmogorov tail probability for statistic d at sample size n.

    p = 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 n d^2), truncated once terms
    vanish at double precision, clamped into [0, 1]. That series converges
    slowly when sqrt(n) d is small, so the equivalent theta-function form
    1 - sqrt(2 pi)/t * sum exp(-(2k-1)^2 pi^2 / (8 t^2)) is used there.
    """
    if d <= 0:
        return 1.0
    t = math.sqrt(n) * d
    if t < 1.0:
        total = 0.0
        for k in range(1, 1001):
            term = math.exp(-((2 * k - 1) ** 2) * math.pi ** 2 / (8.0 * t * t))
            if term < 1e-300:
                break
            total += term
        return min(1.0, max(0.0, 1.0 - math.sqrt(2.0 * math.pi) / t * total))
    total = 0.0
    for k in range(1, 100001):
        term = math.exp(-2.0 * k * k * n * d * d)
        if term < 1e-300:
            break
        total += term if k % 2 == 1 else -term
    return min(1.0, max(0.0, 2.0 * total))


def ks_test_exponential(sample, lam: float) -> KsResult:
    """One-sample K-S test of the sample against Exponential(lam).

    The statistic is the classic order-statistic sup-distance; the p-value
    uses the asymptotic Kolmogorov series (the rate is normally estimated
    from the same sample, so this is a descriptive check, not a
    distribution-free test).
    """
    sample = np.asarray(sample, dtype=float)
    if sample.size < 1 or np.any(sample <= 0):
        raise NonPositiveSampleError("sample must be nonempty and strictly positive")
    if not lam > 0:
        raise NonPositiveSampleError("rate must be positive")
    n = sample.size
    xs = np.sort(sample)
    cdf = 1.0 - np.exp(-lam * xs)
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - cdf)
    d_minus = np.max(cdf - (i - 1) / n)
    d = float(max(d_plus, d_minus))
    return KsResult(d_statistic=d, p_value=kolmogorov_p(d, n), n=int(n))
