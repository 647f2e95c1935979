"""Seeded synthetic data with known truth, and brute-force test oracles."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import SwapState, complete_log_likelihood, update_mixing, update_variances
from .densities import RateEstimate
from .errors import (
    AllOneSidedError,
    NonMonotoneFitError,
    RangeExhaustedError,
    TooLargeError,
)
from .ingest import SeriesPair
from .models import LossWeights, ModelSpec, fit_gmm_loss, forward, inverse

_MAX_DRAWS = 100_000


@dataclass(frozen=True)
class SyntheticTruth:
    model: ModelSpec
    z_true: tuple[int, ...]
    sigma0_sq: float
    sigma1_sq: float
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "model": self.model.to_json_dict(),
            "z_true": list(self.z_true),
            "sigma0_sq": self.sigma0_sq, "sigma1_sq": self.sigma1_sq,
            "seed": self.seed,
        }


def _draw_truncated(rng, draw, accept):
    for _ in range(_MAX_DRAWS):
        v = draw(rng)
        if accept(v):
            return v
    raise RangeExhaustedError("rejection sampling exceeded the attempt budget")


def generate(truth: SyntheticTruth, n: int, x_rate: float, y_rate: float) -> SeriesPair:
    """Draw a pair from the generative model under the given truth.

    z=1 points draw x exponentially and push it forward through g with
    forward noise; z=0 points draw y exponentially (conditioned into g's
    range over positive x) and pull it back with inverse noise, truncated
    to keep x positive. Deterministic given the truth's seed.
    """
    if len(truth.z_true) != n:
        raise ValueError("z_true length must equal n")
    if not (x_rate > 0 and y_rate > 0):
        raise ValueError("marginal rates must be positive")
    rng = np.random.default_rng(truth.seed)
    s0 = np.sqrt(truth.sigma0_sq)
    s1 = np.sqrt(truth.sigma1_sq)
    y_floor = forward(truth.model, 0.0)
    xs, ys = [], []
    for z in truth.z_true:
        if z == 1:
            x = _draw_truncated(rng, lambda r: r.exponential(1.0 / x_rate), lambda v: v > 0)
            y = forward(truth.model, x) + (rng.normal(0.0, s1) if s1 > 0 else 0.0)
        else:
            y = _draw_truncated(rng, lambda r: r.exponential(1.0 / y_rate),
                                lambda v: v > y_floor)
            base = inverse(truth.model, y)
            if s0 > 0:
                x = _draw_truncated(rng, lambda r: base + r.normal(0.0, s0), lambda v: v > 0)
            else:
                x = base
        xs.append(float(x))
        ys.append(float(y))
    return SeriesPair(x=tuple(xs), y=tuple(ys))


def profile_state(pair, z, family: str, floor: float = 1e-12,
                  max_rounds: int = 60) -> SwapState:
    """Best internally-consistent parameters for a fixed assignment.

    Alternates the loss fit of g with the MLE variance update until the
    variances settle; mixing weights follow the assignment counts.
    """
    z = np.asarray(z, dtype=int)
    n0, n1, pi0, pi1 = update_mixing(z)
    s0, s1 = 1.0, 1.0
    model = None
    for _ in range(max_rounds):
        model = fit_gmm_loss(pair, z, LossWeights(s0, s1), family)
        new0, new1, _ = update_variances(pair, z, model, floor, prev=(s0, s1))
        if abs(new0 - s0) <= 1e-12 * max(1.0, s0) and abs(new1 - s1) <= 1e-12 * max(1.0, s1):
            s0, s1 = new0, new1
            break
        s0, s1 = new0, new1
    return SwapState(z=tuple(int(v) for v in z), model=model,
                     sigma0_sq=s0, sigma1_sq=s1, pi0=pi0, pi1=pi1,
                     n0=n0, n1=n1, iteration=0)


def brute_force_best_assignment(pair, family: str, hx: RateEstimate,
                                hy: RateEstimate,
                                floor: float = 1e-12) -> tuple[tuple[int, ...], float]:
    """Enumerate all 2^n assignments and return the likelihood maximizer.

    The variance floor should match the fitter's configuration: with a tiny
    floor the maximizer is usually a two-point group fitted exactly, which
    is the familiar unbounded-likelihood corner of Gaussian mixtures.
    """
    n = pair.n
    if n > 12:
        raise TooLargeError(f"enumeration capped at n=12, got {n}")
    best_z, best_obj = None, -np.inf
    for bits in itertools.product((0, 1), repeat=n):
        try:
            state = profile_state(pair, bits, family, floor=floor)
        except NonMonotoneFitError:
            continue
        obj = complete_log_likelihood(pair, state, hx, hy)
        if obj > best_obj:
            best_z, best_obj = bits, obj
    return best_z, float(best_obj)


def grid_mle_beta(probs, step: float = 1e-3, top: float = 3.0) -> tuple[float, float]:
    """Grid-search shape estimates maximizing the separation log-likelihood.

    The likelihood separates in the two shapes once the mixing mass is fixed
    at the upper-group fraction, so each shape gets its own 1-D grid scan.
    """
    probs = np.asarray(probs, dtype=float)
    lower = probs[probs <= 0.5]
    upper = probs[probs > 0.5]
    if lower.size == 0 or upper.size == 0:
        raise AllOneSidedError("need probabilities on both sides of 0.5")
    p = np.clip(probs, 1e-12, 1.0 - 1e-12)
    lo = p[probs <= 0.5]
    up = p[probs > 0.5]
    grid = np.arange(step, top + step / 2, step)
    s0 = float(np.sum(np.log(lo / (1.0 - lo))))
    s1 = float(np.sum(np.log((1.0 - up) / up)))
    alpha = float(grid[np.argmax(lower.size * np.log(grid) + (grid - 1.0) * s0)])
    beta = float(grid[np.argmax(upper.size * np.log(grid) + (grid - 1.0) * s1)])
    return alpha, beta
