"""Generate the bundled quarterly data snapshot.

The upstream GDP/debt series are revised over time and the original vintage
is not redistributable here, so the repository bundles a seeded synthetic
stand-in with the same period (1966Q1..2023Q1), units, scaling behaviour
and regime structure. Regenerate with:

    python scripts/make_snapshot.py

The test suite's frozen reference values assume this exact snapshot; rerun
scripts/freeze_goldens.py after changing anything here.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

SEED = 20240117
N = 229  # quarters, 1966Q1 through 2023Q1 inclusive

# Latent quadratic relation between the scaled series (before the final
# mean calibration stretches both axes).
G_COEFFS = (0.25, 1.2, 0.3)

# Periods (decimal years, [start, end)) labelled as x-driven: the x series
# carries wide observation noise there, while elsewhere the y series sits
# close to the curve with only a tight disturbance.
X_DRIVES_ERAS = [(1986.0, 1998.0), (2004.0, 2012.0), (2017.0, 2023.5)]

SIGMA0 = 0.28   # x-side noise scale inside the x-driven eras
SIGMA1 = 0.03   # y-side noise scale outside them
AR_RHO = 0.55   # persistence of both observation-noise processes

# Latent x path: exponential growth over a factor of GROWTH_FACTOR with
# AR(1) growth-rate dynamics and visible quarterly innovations.
X_START = 0.6
GROWTH_FACTOR = 8.0
PHI_G = 0.55
S_G = 0.014
CROSS_VU = 0.004  # lagged y-shock feeding x growth
CROSS_UV = 1.5    # lagged x-shock feeding y observation noise

TARGET_MEAN_X = 1.0 / 0.4387
TARGET_MEAN_Y = 1.0 / 0.1349


def g(x):
    a, b, c = G_COEFFS
    return a * x * x + b * x + c


def decimal_year(i: int) -> float:
    return 1966.0 + i / 4.0


def quarter_date(i: int) -> str:
    year = 1966 + i // 4
    month = 3 * (i % 4) + 1
    return f"{year:04d}-{month:02d}-01"


def build() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rng = np.random.default_rng(SEED)
    u = rng.normal(size=N)   # x-side structural shocks
    v = rng.normal(size=N)   # y-side structural shocks
    w = rng.normal(size=N)   # x-side observation shocks

    z = np.array([1 if any(lo <= decimal_year(i) < hi for lo, hi in X_DRIVES_ERAS)
                  else 0 for i in range(N)])

    mu = np.log(GROWTH_FACTOR) / N
    growth = np.empty(N)
    growth[0] = mu
    for t in range(1, N):
        growth[t] = (mu + PHI_G * (growth[t - 1] - mu)
                     + S_G * u[t] + CROSS_VU * v[t - 1])
    x_star = X_START * np.exp(np.concatenate([[0.0], np.cumsum(growth[1:])]))
    y_star = g(x_star)

    # Cross-fed AR noise gives each series some predictive power for the
    # other's innovations, so the pre-check has a real signal to find.
    eps1 = np.empty(N)
    eps0 = np.empty(N)
    eps1[0] = SIGMA1 * v[0]
    eps0[0] = SIGMA0 * w[0]
    for t in range(1, N):
        eps1[t] = AR_RHO * eps1[t - 1] + SIGMA1 * (v[t] + CROSS_UV * u[t - 1])
        eps0[t] = AR_RHO * eps0[t - 1] + SIGMA0 * (w[t] + 0.75 * v[t - 1])

    x_obs = np.where(z == 1, np.maximum(x_star + eps0, 0.02), x_star)
    y_obs = np.where(z == 0, np.maximum(y_star + eps1, 0.02), y_star)

    x_obs = x_obs * (TARGET_MEAN_X / np.mean(x_obs))
    y_obs = y_obs * (TARGET_MEAN_Y / np.mean(y_obs))
    return x_obs, y_obs, z


def write_csv(path: Path, values: np.ndarray) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["date", "value"])
        for i, val in enumerate(values):
            w.writerow([quarter_date(i), repr(float(val) * 1e6)])


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "src" / "swapfit" / "data"
    out.mkdir(parents=True, exist_ok=True)
    x_obs, y_obs, z = build()
    write_csv(out / "gdp.csv", x_obs)
    write_csv(out / "public_debt.csv", y_obs)
    np.save(Path(__file__).resolve().parent / "snapshot_z_true.npy", z)
    print(f"n={len(x_obs)} mean_x={np.mean(x_obs):.6f} mean_y={np.mean(y_obs):.6f}")
    print(f"lambda_x={1 / np.mean(x_obs):.4f} lambda_y={1 / np.mean(y_obs):.4f}")
    print(f"n0={int(np.sum(z == 0))} n1={int(np.sum(z == 1))}")


if __name__ == "__main__":
    main()
