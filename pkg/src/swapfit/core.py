"""Alternating-optimization engine for the latent direction indicator.

Each iteration hard-assigns every point to the forward (z=1: y explained by
g(x)) or inverse (z=0: x explained by g^{-1}(y)) regime from the current
posterior, refits g under the configured loss, then refreshes the noise
variances and mixing weights. Multiple seeded restarts guard against bad
random initializations.
"""
from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .densities import RateEstimate
from .errors import (
    AllRestartsFailedError,
    NonMonotoneFitError,
    TrustRegionExhaustedError,
)
from .models import (
    LINEAR,
    QUADRATIC,
    LossWeights,
    ModelSpec,
    beta_loss_value,
    fit_beta_loss,
    fit_gmm_loss,
    forward,
    gmm_loss_value,
    inverse_clamped,
    _start_point,
)

GMM = "gmm"
BETA = "beta"

_Points = namedtuple("_Points", ["x", "y"])

Z_FIXED_POINT = "ZFixedPoint"
G_TOLERANCE = "GTolerance"
MAX_ITERS = "MaxIters"


@dataclass(frozen=True)
class SwapConfig:
    variant: str = GMM
    family: str = LINEAR
    tol_g: float = 1e-8
    max_iters: int = 500
    restarts: int = 20
    seed: int = 42
    variance_floor: float = 1e-12

    def __post_init__(self):
        if self.variant not in (GMM, BETA):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.family not in (LINEAR, QUADRATIC):
            raise ValueError(f"unknown family {self.family!r}")
        if not self.tol_g > 0:
            raise ValueError("tol_g must be positive")
        if self.max_iters < 1 or self.restarts < 1:
            raise ValueError("max_iters and restarts must be >= 1")

    def to_json_dict(self) -> dict:
        return {
            "variant": self.variant, "family": self.family, "tol_g": self.tol_g,
            "max_iters": self.max_iters, "restarts": self.restarts,
            "seed": self.seed, "variance_floor": self.variance_floor,
        }


@dataclass(frozen=True)
class SwapState:
    z: tuple[int, ...]
    model: ModelSpec
    sigma0_sq: float
    sigma1_sq: float
    pi0: float
    pi1: float
    n0: int
    n1: int
    iteration: int = 0

    @property
    def weights(self) -> LossWeights:
        return LossWeights(self.sigma0_sq, self.sigma1_sq)


@dataclass(frozen=True)
class SwapFit:
    final: SwapState
    posteriors: tuple[tuple[float, float], ...]
    objective_trace: tuple[float, ...]
    stop_reason: str
    restart_index_chosen: int
    clamp_fired: bool
    config: SwapConfig

    def to_json_dict(self) -> dict:
        s = self.final
        return {
            "model": s.model.to_json_dict(),
            "sigma0_sq": s.sigma0_sq, "sigma1_sq": s.sigma1_sq,
            "pi0": s.pi0, "pi1": s.pi1, "n0": s.n0, "n1": s.n1,
            "iterations": s.iteration,
            "z": list(s.z),
            "posteriors": [[p0, p1] for p0, p1 in self.posteriors],
            "objective_trace": list(self.objective_trace),
            "stop_reason": self.stop_reason,
            "restart_index_chosen": self.restart_index_chosen,
            "clamp_fired": self.clamp_fired,
            "config": self.config.to_json_dict(),
        }


def _pi_clamped(n0: int, n: int) -> tuple[float, float, bool]:
    """Mixing weights n0/n, clamped into [1/(n+1), n/(n+1)] to keep logs finite."""
    lo, hi = 1.0 / (n + 1), n / (n + 1.0)
    pi0 = n0 / n
    clamped = pi0 < lo or pi0 > hi
    pi0 = min(max(pi0, lo), hi)
    return pi0, 1.0 - pi0, clamped


def update_mixing(z) -> tuple[int, int, float, float]:
    z = np.asarray(z, dtype=int)
    n = z.size
    n0 = int(np.sum(z == 0))
    pi0, pi1, _ = _pi_clamped(n0, n)
    return n0, n - n0, pi0, pi1


def _log_weights(pair, s: SwapState, hx: RateEstimate, hy: RateEstimate):
    """Unnormalized log posterior weights (logB for z=0, logA for z=1) per point.

    Points where the inverse branch is undefined get logB = -inf: an
    infinite inverse residual means the z=0 regime cannot explain them.
    """
    x = np.asarray(pair.x, dtype=float)
    y = np.asarray(pair.y, dtype=float)
    fwd = (y - forward(s.model, x)) ** 2
    log_a = (math.log(s.pi1) - 0.5 * math.log(2.0 * math.pi * s.sigma1_sq)
             - fwd / (2.0 * s.sigma1_sq) + hx.log_density(x))
    if s.model.family == QUADRATIC:
        a, b, c = s.model.coefficients
        disc = b * b - 4.0 * a * (c - y)
        ok = disc >= 0
        ginv = np.where(ok, (-b + np.sqrt(np.maximum(disc, 0.0))) / (2.0 * a), 0.0)
    else:
        ok = np.ones_like(y, dtype=bool)
        ginv, _ = inverse_clamped(s.model, y)
    inv = (x - ginv) ** 2
    log_b = (math.log(s.pi0) - 0.5 * math.log(2.0 * math.pi * s.sigma0_sq)
             - inv / (2.0 * s.sigma0_sq) + hy.log_density(y))
    log_b = np.where(ok, log_b, -np.inf)
    return log_b, log_a


def posterior_all(pair, s: SwapState, hx: RateEstimate, hy: RateEstimate):
    """(p0, p1) arrays, normalized in log space with max subtraction."""
    log_b, log_a = _log_weights(pair, s, hx, hy)
    top = np.maximum(log_a, log_b)
    ea = np.exp(log_a - top)
    eb = np.exp(log_b - top)
    total = ea + eb
    return eb / total, ea / total


def posterior_z(x: float, y: float, s: SwapState, hx: RateEstimate,
                hy: RateEstimate) -> tuple[float, float]:
    """Posterior probability pair (p0, p1) for a single observation."""
    one = _Points(x=np.array([x]), y=np.array([y]))
    p0, p1 = posterior_all(one, s, hx, hy)
    return float(p0[0]), float(p1[0])


def assign_z(pair, s: SwapState, hx: RateEstimate, hy: RateEstimate) -> np.ndarray:
    """Hard assignment: z=1 wherever p1 >= p0 (ties go to the forward regime)."""
    p0, p1 = posterior_all(pair, s, hx, hy)
    return (p1 >= p0).astype(int)


def update_model(pair, z, s: SwapState, cfg: SwapConfig) -> ModelSpec:
    """Refit g for the new assignment under the configured loss.

    The GMM variant keeps the current model when the fresh search comes back
    worse, so the loop stays a coordinate ascent on the complete-data
    likelihood. The beta variant refines the GMM solution under the signed
    separation loss; while the assignment is still churning that loss can be
    unbounded over the trust region, in which case the iteration falls back
    to the squared-loss candidate and the refinement is retried once the
    groups have settled.
    """
    w = s.weights
    candidate = fit_gmm_loss(pair, z, w, cfg.family)
    if cfg.variant == GMM:
        if gmm_loss_value(pair, z, w, candidate) > gmm_loss_value(pair, z, w, s.model):
            return s.model
        return candidate
    try:
        return fit_beta_loss(pair, z, w, cfg.family, init=candidate)
    except TrustRegionExhaustedError:
        return candidate


def update_variances(pair, z, m: ModelSpec, floor: float,
                     prev: tuple[float, float]) -> tuple[float, float, bool]:
    """Zero-mean MLE variances of the two residual groups.

    An empty group keeps its previous value; the floor absorbs exact fits.
    The returned flag records whether the floor fired.
    """
    x = np.asarray(pair.x, dtype=float)
    y = np.asarray(pair.y, dtype=float)
    z = np.asarray(z, dtype=int)
    floored = False
    z1 = z == 1
    if np.any(z1):
        s1 = float(np.mean((y[z1] - forward(m, x[z1])) ** 2))
    else:
        s1 = prev[1]
    if np.any(~z1):
        ginv, _ = inverse_clamped(m, y[~z1])
        s0 = float(np.mean((x[~z1] - ginv) ** 2))
    else:
        s0 = prev[0]
    if s0 < floor or s1 < floor:
        floored = True
    return max(s0, floor), max(s1, floor), floored


def complete_log_likelihood(pair, s: SwapState, hx: RateEstimate,
                            hy: RateEstimate) -> float:
    """Joint log-likelihood of data and hard assignments, mixing terms included."""
    x = np.asarray(pair.x, dtype=float)
    y = np.asarray(pair.y, dtype=float)
    z = np.asarray(s.z, dtype=int)
    z1 = z == 1
    total = 0.0
    if np.any(z1):
        res = y[z1] - forward(s.model, x[z1])
        total += float(np.sum(
            math.log(s.pi1) - 0.5 * math.log(2.0 * math.pi * s.sigma1_sq)
            - res ** 2 / (2.0 * s.sigma1_sq) + hx.log_density(x[z1])))
    if np.any(~z1):
        from .models import inverse as strict_inverse
        ginv = strict_inverse(s.model, y[~z1])
        res = x[~z1] - ginv
        total += float(np.sum(
            math.log(s.pi0) - 0.5 * math.log(2.0 * math.pi * s.sigma0_sq)
            - res ** 2 / (2.0 * s.sigma0_sq) + hy.log_density(y[~z1])))
    return total


def initialize(pair, cfg: SwapConfig, hx: RateEstimate, hy: RateEstimate,
               rng: np.random.Generator) -> SwapState:
    """Random fair-coin z, least squares g of y on x, MLE residual variances."""
    n = pair.n
    z = rng.integers(0, 2, size=n)
    start = _start_point(np.asarray(pair.x, float), np.asarray(pair.y, float), cfg.family)
    model = ModelSpec(cfg.family, tuple(float(c) for c in start))
    s0, s1, _ = update_variances(pair, z, model, cfg.variance_floor,
                                 prev=(cfg.variance_floor, cfg.variance_floor))
    n0, n1, pi0, pi1 = update_mixing(z)
    return SwapState(z=tuple(int(v) for v in z), model=model,
                     sigma0_sq=s0, sigma1_sq=s1, pi0=pi0, pi1=pi1,
                     n0=n0, n1=n1, iteration=0)


def _objective(pair, s: SwapState, cfg: SwapConfig, hx, hy) -> float:
    if cfg.variant == GMM:
        return complete_log_likelihood(pair, s, hx, hy)
    return beta_loss_value(pair, np.asarray(s.z, int), s.weights, s.model)


def _run_one(pair, cfg: SwapConfig, hx, hy, rng) -> tuple[SwapState, list[float], str, bool]:
    state = initialize(pair, cfg, hx, hy, rng)
    trace: list[float] = []
    clamp_fired = False
    stop = MAX_ITERS
    for it in range(1, cfg.max_iters + 1):
        z_new = assign_z(pair, state, hx, hy)
        if tuple(int(v) for v in z_new) == state.z:
            stop = Z_FIXED_POINT
            break
        model_new = update_model(pair, z_new, state, cfg)
        s0, s1, floored = update_variances(
            pair, z_new, model_new, cfg.variance_floor,
            prev=(state.sigma0_sq, state.sigma1_sq))
        n0, n1, pi0, pi1 = update_mixing(z_new)
        _, _, pi_clamp = _pi_clamped(n0, pair.n)
        clamp_fired = clamp_fired or floored or pi_clamp
        delta = np.linalg.norm(
            np.asarray(model_new.coefficients) - np.asarray(state.model.coefficients))
        state = SwapState(z=tuple(int(v) for v in z_new), model=model_new,
                          sigma0_sq=s0, sigma1_sq=s1, pi0=pi0, pi1=pi1,
                          n0=n0, n1=n1, iteration=it)
        trace.append(_objective(pair, state, cfg, hx, hy))
        if delta < cfg.tol_g:
            stop = G_TOLERANCE
            break
    if cfg.variant == BETA:
        # The converged model must come from the separation loss itself, not
        # from a mid-run fallback; failure here fails the restart.
        candidate = fit_gmm_loss(pair, state.z, state.weights, cfg.family)
        model = fit_beta_loss(pair, state.z, state.weights, cfg.family,
                              init=candidate)
        state = SwapState(z=state.z, model=model, sigma0_sq=state.sigma0_sq,
                          sigma1_sq=state.sigma1_sq, pi0=state.pi0,
                          pi1=state.pi1, n0=state.n0, n1=state.n1,
                          iteration=state.iteration)
    return state, trace, stop, clamp_fired


def run_swap(pair, cfg: SwapConfig, hx: RateEstimate, hy: RateEstimate) -> SwapFit:
    """Full multi-restart alternating optimization.

    Returns the restart with the best final objective: highest complete-data
    log-likelihood for the GMM variant, lowest separation loss for the beta
    variant. Posteriors are recomputed at the winning parameters.
    """
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    best = None
    failures = []
    for r, ss in enumerate(streams):
        rng = np.random.default_rng(ss)
        try:
            state, trace, stop, clamped = _run_one(pair, cfg, hx, hy, rng)
        except (NonMonotoneFitError, TrustRegionExhaustedError) as exc:
            failures.append((r, exc))
            continue
        obj = _objective(pair, state, cfg, hx, hy)
        better = (best is None
                  or (cfg.variant == GMM and obj > best[0])
                  or (cfg.variant == BETA and obj < best[0]))
        if better:
            best = (obj, r, state, trace, stop, clamped)
    if best is None:
        raise AllRestartsFailedError(f"all {cfg.restarts} restarts failed: {failures}")
    _, r, state, trace, stop, clamped = best
    p0, p1 = posterior_all(pair, state, hx, hy)
    return SwapFit(
        final=state,
        posteriors=tuple((float(a), float(b)) for a, b in zip(p0, p1)),
        objective_trace=tuple(trace),
        stop_reason=stop,
        restart_index_chosen=r,
        clamp_fired=clamped,
        config=cfg,
    )
