"""Bijective regression families and the two variance-weighted loss fits.

The regression function g is either linear (a*x + b) or a monotone-increasing
quadratic (a*x^2 + b*x + c restricted to x >= -b/(2a), a > 0) so that both
g and g^{-1} are available everywhere they are needed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import (
    DegenerateDesignError,
    InverseDomainError,
    NonMonotoneFitError,
    TrustRegionExhaustedError,
)

LINEAR = "linear"
QUADRATIC = "quadratic"

# Penalty weight applied per unit of clamped discriminant deficit when the
# quadratic inverse is evaluated below the branch minimum during a search.
_CLAMP_PENALTY = 1e3
_SIMPLEX_OPTIONS = {"maxiter": 2000, "maxfev": 4000, "xatol": 1e-10, "fatol": 1e-12}


@dataclass(frozen=True)
class ModelSpec:
    family: str
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if self.family not in (LINEAR, QUADRATIC):
            raise ValueError(f"unknown family {self.family!r}")
        want = 2 if self.family == LINEAR else 3
        if len(self.coefficients) != want:
            raise ValueError(f"{self.family} needs {want} coefficients")

    def to_json_dict(self) -> dict:
        return {"family": self.family, "coefficients": list(self.coefficients)}

    @classmethod
    def from_json_dict(cls, d: dict) -> "ModelSpec":
        return cls(family=d["family"], coefficients=tuple(float(c) for c in d["coefficients"]))


@dataclass(frozen=True)
class LossWeights:
    sigma0_sq: float
    sigma1_sq: float

    def __post_init__(self):
        if not (self.sigma0_sq > 0 and np.isfinite(self.sigma0_sq)):
            raise ValueError("sigma0_sq must be positive and finite")
        if not (self.sigma1_sq > 0 and np.isfinite(self.sigma1_sq)):
            raise ValueError("sigma1_sq must be positive and finite")


def forward(m: ModelSpec, x):
    """Evaluate g(x); accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    if m.family == LINEAR:
        a, b = m.coefficients
        out = a * x + b
    else:
        a, b, c = m.coefficients
        out = a * x * x + b * x + c
    return float(out) if out.ndim == 0 else out


def inverse(m: ModelSpec, y):
    """Evaluate g^{-1}(y) on the monotone branch; raises when undefined."""
    y = np.asarray(y, dtype=float)
    if m.family == LINEAR:
        a, b = m.coefficients
        out = (y - b) / a
    else:
        a, b, c = m.coefficients
        disc = b * b - 4.0 * a * (c - y)
        bad = disc < 0
        if np.any(bad):
            offending = float(np.atleast_1d(y)[np.atleast_1d(bad)][0])
            raise InverseDomainError(offending)
        out = (-b + np.sqrt(disc)) / (2.0 * a)
    return float(out) if out.ndim == 0 else out


def inverse_clamped(m: ModelSpec, y) -> tuple[np.ndarray, float]:
    """Inverse with the square-root argument clamped at zero.

    Returns (values, deficit) where deficit is the total magnitude of the
    clamped discriminant, used as a search penalty. Zero deficit means the
    strict inverse would have succeeded everywhere.
    """
    y = np.asarray(y, dtype=float)
    if m.family == LINEAR:
        a, b = m.coefficients
        return (y - b) / a, 0.0
    a, b, c = m.coefficients
    disc = b * b - 4.0 * a * (c - y)
    deficit = float(np.sum(np.maximum(-disc, 0.0)))
    out = (-b + np.sqrt(np.maximum(disc, 0.0))) / (2.0 * a)
    return out, deficit


def is_monotone_over(m: ModelSpec, x_min: float) -> bool:
    """True when g is monotone increasing for all x >= x_min."""
    if m.family == LINEAR:
        return m.coefficients[0] > 0
    a, b, _ = m.coefficients
    return a > 0 and (-b / (2.0 * a)) <= x_min


def ols_fit(x: np.ndarray, y: np.ndarray, family: str) -> ModelSpec:
    """Plain least squares of y on x over all points."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    deg = 1 if family == LINEAR else 2
    if np.ptp(x) == 0.0:
        raise DegenerateDesignError("all x values identical")
    coeffs = np.polyfit(x, y, deg)
    return ModelSpec(family, tuple(float(c) for c in coeffs))


def _objective(coeffs: np.ndarray, family: str, x: np.ndarray, y: np.ndarray,
               z: np.ndarray, w: LossWeights, signed: bool) -> float:
    """Variance-weighted loss; `signed` selects the separation variant.

    Unsigned: sum_{z=1} (y-g(x))^2/s1 + sum_{z=0} (x-g^{-1}(y))^2/s0.
    Signed:   each point contributes its own-group term minus the
              opposite-group term.
    Out-of-branch inverse evaluations are clamped and penalized so the
    search is steered back into the valid region.
    """
    m = ModelSpec(family, tuple(coeffs))
    a = coeffs[0]
    if family == QUADRATIC and a <= 0:
        return 1e12 * (1.0 + abs(a))
    if family == LINEAR and a == 0:
        return 1e12
    fwd_res = (y - forward(m, x)) ** 2 / w.sigma1_sq
    inv_vals, deficit = inverse_clamped(m, y)
    inv_res = (x - inv_vals) ** 2 / w.sigma0_sq
    z1 = z == 1
    if signed:
        loss = float(np.sum(fwd_res[z1] - inv_res[z1]) + np.sum(inv_res[~z1] - fwd_res[~z1]))
    else:
        loss = float(np.sum(fwd_res[z1]) + np.sum(inv_res[~z1]))
    penalty = deficit * _CLAMP_PENALTY / w.sigma0_sq
    if family == QUADRATIC:
        vertex = -coeffs[1] / (2.0 * a)
        overshoot = vertex - float(np.min(x))
        if overshoot > 0:
            penalty += _CLAMP_PENALTY * overshoot * overshoot
    return loss + penalty


def gmm_loss_value(pair, z, w: LossWeights, m: ModelSpec) -> float:
    return _objective(np.asarray(m.coefficients, dtype=float), m.family,
                      np.asarray(pair.x, float), np.asarray(pair.y, float),
                      np.asarray(z, int), w, signed=False)


def beta_loss_value(pair, z, w: LossWeights, m: ModelSpec) -> float:
    return _objective(np.asarray(m.coefficients, dtype=float), m.family,
                      np.asarray(pair.x, float), np.asarray(pair.y, float),
                      np.asarray(z, int), w, signed=True)


def _search(x0: np.ndarray, family: str, x: np.ndarray, y: np.ndarray,
            z: np.ndarray, w: LossWeights, signed: bool, bounds=None) -> np.ndarray:
    res = minimize(
        _objective, x0, args=(family, x, y, z, w, signed),
        method="Nelder-Mead", bounds=bounds, options=_SIMPLEX_OPTIONS,
    )
    return np.asarray(res.x, dtype=float)


def _validated(coeffs: np.ndarray, family: str, x: np.ndarray, y: np.ndarray) -> ModelSpec:
    m = ModelSpec(family, tuple(float(c) for c in coeffs))
    if not is_monotone_over(m, float(np.min(x))):
        raise NonMonotoneFitError(f"fitted model not monotone over data range: {m}")
    _, deficit = inverse_clamped(m, y)
    if deficit > 0:
        raise NonMonotoneFitError("fitted model needs inverse clamping on the data")
    return m


def _start_point(x: np.ndarray, y: np.ndarray, family: str) -> np.ndarray:
    start = np.asarray(ols_fit(x, y, family).coefficients, dtype=float)
    if family == QUADRATIC and not is_monotone_over(ModelSpec(family, tuple(start)), float(np.min(x))):
        # Nudge the plain quadratic fit into the monotone region before searching.
        a = max(start[0], 1e-6)
        start = np.array([a, max(start[1], -2.0 * a * float(np.min(x))), start[2]])
    return start


def fit_gmm_loss(pair, z, w: LossWeights, family: str) -> ModelSpec:
    """Minimize the variance-weighted two-group squared-residual loss.

    Simplex search started from the all-points least squares fit of y on x;
    one perturbed restart is attempted before giving up on monotonicity.
    """
    x = np.asarray(pair.x, dtype=float)
    y = np.asarray(pair.y, dtype=float)
    z = np.asarray(z, dtype=int)
    ncoef = 2 if family == LINEAR else 3
    if len(x) < ncoef + 1:
        raise DegenerateDesignError(f"need at least {ncoef + 1} points")
    start = _start_point(x, y, family)
    best = _search(start, family, x, y, z, w, signed=False)
    try:
        return _validated(best, family, x, y)
    except NonMonotoneFitError:
        jitter = start * (1.0 + 1e-2) + 1e-3
        best = _search(jitter, family, x, y, z, w, signed=False)
        return _validated(best, family, x, y)


def fit_beta_loss(pair, z, w: LossWeights, family: str,
                  init: ModelSpec) -> ModelSpec:
    """Refine `init` under the signed separation loss within a trust region.

    The signed loss is a difference of convex terms and can be unbounded, so
    the search is boxed to +/-50% around each init coefficient; landing on
    the box boundary is reported rather than silently accepted.
    """
    x = np.asarray(pair.x, dtype=float)
    y = np.asarray(pair.y, dtype=float)
    z = np.asarray(z, dtype=int)
    start = np.asarray(init.coefficients, dtype=float)
    half = 0.5 * np.maximum(np.abs(start), 1e-3)
    lo, hi = start - half, start + half
    best = _search(start, init.family, x, y, z, w, signed=True,
                   bounds=list(zip(lo, hi)))
    rel = np.minimum(np.abs(best - lo), np.abs(hi - best)) / np.maximum(half, 1e-300)
    if np.any(rel < 1e-8):
        raise TrustRegionExhaustedError(
            f"separation loss pushed coefficients to the trust-region boundary: {best}")
    return _validated(best, init.family, x, y)
