"""Bidirectional Granger F-tests and residual stationarity checks."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import f as f_dist

from .errors import InsufficientDataError, SingularDesignError

Y_TO_X = "YtoX"
X_TO_Y = "XtoY"

# Dickey-Fuller critical values, constant and no trend, by sample size.
_ADF_SIZES = (25, 50, 100, 250, 500, 100000)
_ADF_TABLE = {
    0.01: (-3.75, -3.58, -3.51, -3.46, -3.44, -3.43),
    0.05: (-3.00, -2.93, -2.89, -2.88, -2.87, -2.86),
    0.10: (-2.63, -2.60, -2.58, -2.57, -2.57, -2.57),
}


@dataclass(frozen=True)
class GrangerResult:
    direction: str
    lag: int
    f_stat: float
    p_value: float
    rss_restricted: float
    rss_unrestricted: float
    df_num: int
    df_den: int

    def to_json_dict(self) -> dict:
        return {
            "direction": self.direction, "lag": self.lag,
            "f_stat": self.f_stat, "p_value": self.p_value,
            "rss_restricted": self.rss_restricted,
            "rss_unrestricted": self.rss_unrestricted,
            "df_num": self.df_num, "df_den": self.df_den,
        }


@dataclass(frozen=True)
class AdfResult:
    t_stat: float
    lag_order: int
    p_label: str
    critical_values: dict[float, float]

    def to_json_dict(self) -> dict:
        return {
            "t_stat": self.t_stat, "lag_order": self.lag_order,
            "p_label": self.p_label,
            "critical_values": {str(k): v for k, v in self.critical_values.items()},
        }


@dataclass(frozen=True)
class CausalityReport:
    granger: tuple[GrangerResult, ...]
    adf: tuple[AdfResult, AdfResult]
    bidirectional: bool

    def to_json_dict(self) -> dict:
        return {
            "granger": [g.to_json_dict() for g in self.granger],
            "adf": [a.to_json_dict() for a in self.adf],
            "bidirectional": self.bidirectional,
        }


def _ols(design: np.ndarray, target: np.ndarray):
    """Least squares via orthogonal decomposition; returns (coef, residuals)."""
    if np.linalg.matrix_rank(design) < design.shape[1]:
        raise SingularDesignError("rank-deficient regression design")
    coef, _, _, _ = np.linalg.lstsq(design, target, rcond=None)
    resid = target - design @ coef
    return coef, resid


def _lag_matrix(series: np.ndarray, lag: int) -> np.ndarray:
    """Columns are the series at lags 1..lag, aligned to the trimmed target."""
    n = series.size
    return np.column_stack([series[lag - j: n - j] for j in range(1, lag + 1)])


def granger_test(pair, direction: str, lag: int,
                 return_residuals: bool = False):
    """Nested-model F-test of whether the source's lags improve the target.

    direction YtoX tests whether y's lags help predict x; XtoY the reverse.
    """
    if lag < 1:
        raise InsufficientDataError("lag must be >= 1")
    x = np.asarray(pair.x, dtype=float)
    y = np.asarray(pair.y, dtype=float)
    target, source = (x, y) if direction == Y_TO_X else (y, x)
    n = target.size
    if n <= 2 * lag + 2:
        raise InsufficientDataError(f"need more than {2 * lag + 2} points for lag {lag}")
    t = target[lag:]
    n_eff = t.size
    ones = np.ones((n_eff, 1))
    own = _lag_matrix(target, lag)
    other = _lag_matrix(source, lag)
    _, res_r = _ols(np.hstack([ones, own]), t)
    _, res_u = _ols(np.hstack([ones, own, other]), t)
    rss_r = float(res_r @ res_r)
    rss_u = float(res_u @ res_u)
    df_num = lag
    df_den = n_eff - 2 * lag - 1
    f_stat = ((rss_r - rss_u) / df_num) / (rss_u / df_den)
    p = float(f_dist.sf(f_stat, df_num, df_den))
    result = GrangerResult(direction=direction, lag=lag, f_stat=float(f_stat),
                           p_value=p, rss_restricted=rss_r, rss_unrestricted=rss_u,
                           df_num=df_num, df_den=df_den)
    if return_residuals:
        return result, res_u
    return result


def _adf_regression(series: np.ndarray, lag_order: int):
    """Dickey-Fuller regression with constant; returns (t_stat, aic)."""
    r = np.asarray(series, dtype=float)
    dr = np.diff(r)
    n = dr.size
    if n <= lag_order + 2:
        raise InsufficientDataError("series too short for requested lag order")
    t = dr[lag_order:]
    cols = [np.ones(t.size), r[lag_order:-1]]
    for j in range(1, lag_order + 1):
        cols.append(dr[lag_order - j: n - j])
    design = np.column_stack(cols)
    coef, resid = _ols(design, t)
    dof = t.size - design.shape[1]
    if dof <= 0:
        raise InsufficientDataError("no residual degrees of freedom")
    s2 = float(resid @ resid) / dof
    cov = s2 * np.linalg.inv(design.T @ design)
    t_stat = float(coef[1] / np.sqrt(cov[1, 1]))
    # Gaussian AIC up to constants, for the lag-order sweep.
    aic = t.size * np.log(float(resid @ resid) / t.size) + 2.0 * design.shape[1]
    return t_stat, aic


def _adf_critical(level: float, n: int) -> float:
    row = _ADF_TABLE[level]
    sizes = _ADF_SIZES
    if n <= sizes[0]:
        return row[0]
    if n >= sizes[-1]:
        return row[-1]
    hi = next(i for i, s in enumerate(sizes) if s >= n)
    lo = hi - 1
    w = (n - sizes[lo]) / (sizes[hi] - sizes[lo])
    return row[lo] + w * (row[hi] - row[lo])


def adf_test(series, lag_order: int | None = None) -> AdfResult:
    """Augmented Dickey-Fuller unit-root test (constant, no trend).

    With lag_order None the order is picked by minimizing AIC over 0..8.
    The p-value is reported as a bracket against the tabulated critical
    values, interpolating between the 1%/5%/10% rows.
    """
    series = np.asarray(series, dtype=float)
    if lag_order is None:
        candidates = []
        for k in range(0, 9):
            try:
                _, aic = _adf_regression(series, k)
            except InsufficientDataError:
                break
            candidates.append((aic, k))
        if not candidates:
            raise InsufficientDataError("series too short for any lag order")
        lag_order = min(candidates)[1]
    if series.size <= lag_order + 3:
        raise InsufficientDataError("series too short")
    t_stat, _ = _adf_regression(series, lag_order)
    n = series.size
    cvs = {lvl: _adf_critical(lvl, n) for lvl in (0.01, 0.05, 0.10)}
    if t_stat < cvs[0.01]:
        label = "<0.01"
    elif t_stat > cvs[0.10]:
        label = ">0.10"
    else:
        # Linear interpolation of p between the bracketing table levels.
        levels = [0.01, 0.05, 0.10]
        for a, b in zip(levels, levels[1:]):
            if cvs[a] <= t_stat <= cvs[b]:
                w = (t_stat - cvs[a]) / (cvs[b] - cvs[a])
                label = f"{a + w * (b - a):.4f}"
                break
        else:
            label = "0.0500"
    return AdfResult(t_stat=t_stat, lag_order=lag_order, p_label=label,
                     critical_values=cvs)


def bidirectional_report(pair, max_lag: int) -> CausalityReport:
    """Granger sweep over lags 1..max_lag both ways, plus residual ADF tests.

    A direction counts as causal when any lag is significant at 0.05; the
    ADF test runs on the unrestricted-model residuals at each direction's
    lowest-p lag.
    """
    if max_lag < 1:
        raise InsufficientDataError("max_lag must be >= 1")
    results = []
    adf_results = []
    flags = []
    for direction in (Y_TO_X, X_TO_Y):
        per_dir = []
        residuals = {}
        for lag in range(1, max_lag + 1):
            res, resid = granger_test(pair, direction, lag, return_residuals=True)
            per_dir.append(res)
            residuals[lag] = resid
        best = min(per_dir, key=lambda g: g.p_value)
        adf_results.append(adf_test(residuals[best.lag]))
        flags.append(any(g.p_value < 0.05 for g in per_dir))
        results.extend(per_dir)
    return CausalityReport(
        granger=tuple(results),
        adf=(adf_results[0], adf_results[1]),
        bidirectional=all(flags),
    )


def format_granger_table(report: CausalityReport) -> str:
    """Plain-text table of the lag sweep, one row per direction/lag."""
    lines = [f"{'direction':<8} {'lag':>3} {'F':>10} {'p':>12} {'df':>9}"]
    for g in report.granger:
        lines.append(
            f"{g.direction:<8} {g.lag:>3} {g.f_stat:>10.4f} {g.p_value:>12.3e} "
            f"{g.df_num:>3},{g.df_den:<5}")
    lines.append(f"bidirectional: {report.bidirectional}")
    for tag, a in zip(("YtoX", "XtoY"), report.adf):
        lines.append(
            f"ADF residuals {tag}: t={a.t_stat:.3f} lag={a.lag_order} p {a.p_label}")
    return "\n".join(lines)
