"""Freeze reference values for the regression tests.

Runs the full pipeline on the bundled snapshot with the default
configuration and writes tests/golden/goldens.json. Rerun after any change
to the snapshot or to numerically relevant code, and review the diff before
committing it.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from swapfit.betagof import fit_alpha_beta
from swapfit.causality import bidirectional_report
from swapfit.core import SwapConfig, complete_log_likelihood, run_swap
from swapfit.densities import fit_exponential, ks_test_exponential
from swapfit.ingest import align_pair, load_series_csv, scale_pair
from swapfit.models import ols_fit
from swapfit.timeline import timeline_segments

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "src" / "swapfit" / "data"
OUT = ROOT / "tests" / "golden" / "goldens.json"


def main() -> None:
    gdp = load_series_csv(DATA / "gdp.csv")
    debt = load_series_csv(DATA / "public_debt.csv")
    pair = scale_pair(align_pair(gdp, debt), 1e-6)
    hx = fit_exponential(pair.x)
    hy = fit_exponential(pair.y)

    golden: dict = {"n": pair.n}

    golden["lambda_x"] = hx.lam
    golden["lambda_y"] = hy.lam
    for name, series, rate in (("x", pair.x, hx), ("y", pair.y, hy)):
        ks = ks_test_exponential(series, rate.lam)
        golden[f"ks_{name}"] = {"d": ks.d_statistic, "p": ks.p_value}

    rep = bidirectional_report(pair, max_lag=8)
    golden["granger"] = {
        "bidirectional": rep.bidirectional,
        "best_p": {
            d: min(g.p_value for g in rep.granger if g.direction == d)
            for d in ("YtoX", "XtoY")
        },
        "adf_t": [a.t_stat for a in rep.adf],
        "adf_labels": [a.p_label for a in rep.adf],
    }

    golden["models"] = {}
    golden["models"]["slr"] = list(ols_fit(pair.x, pair.y, "linear").coefficients)
    golden["models"]["qr"] = list(ols_fit(pair.x, pair.y, "quadratic").coefficients)

    fits = {}
    for variant in ("gmm", "beta"):
        for family in ("linear", "quadratic"):
            cfg = SwapConfig(variant=variant, family=family)
            fit = run_swap(pair, cfg, hx, hy)
            fits[f"{variant}-{family}"] = fit
            golden["models"][f"{variant}-{family}"] = list(fit.final.model.coefficients)
            golden[f"fit_{variant}-{family}"] = {
                "n0": fit.final.n0,
                "n1": fit.final.n1,
                "sigma0_sq": fit.final.sigma0_sq,
                "sigma1_sq": fit.final.sigma1_sq,
                "objective": fit.objective_trace[-1],
                "stop_reason": fit.stop_reason,
                "restart": fit.restart_index_chosen,
                "log_likelihood": complete_log_likelihood(pair, fit.final, hx, hy),
            }

    for name, fit in fits.items():
        p1 = np.array([p[1] for p in fit.posteriors])
        gof = fit_alpha_beta(p1)
        golden[f"gof_{name}"] = {
            "alpha": gof.alpha_hat, "beta": gof.beta_hat, "gamma": gof.gamma,
            "n0": gof.n0, "n1": gof.n1,
        }

    best = fits["gmm-quadratic"]

    segments = timeline_segments(best.final.z, pair.index, smooth_window=5)
    golden["timeline"] = [s.to_json_dict() for s in segments]

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(golden, indent=2, sort_keys=True) + "\n",
                   encoding="utf-8")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
