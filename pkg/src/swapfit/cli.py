"""Command-line front end: fit, precheck, gof, timeline, synth."""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from .betagof import fit_alpha_beta
from .causality import bidirectional_report, format_granger_table
from .core import BETA, GMM, SwapConfig, run_swap
from .densities import fit_exponential, ks_test_exponential
from .errors import AllRestartsFailedError, MissingFitError, SwapfitError
from .ingest import QuarterIndex, align_pair, load_series_csv, scale_pair
from .models import LINEAR, QUADRATIC, ModelSpec, ols_fit
from .reporting import (
    write_comparison_csv,
    write_histogram_csv,
    write_json,
    write_manifest,
    write_points_csv,
    write_scatter_svg,
    write_timeline_csv,
)
from .synthetic import SyntheticTruth, brute_force_best_assignment, generate
from .timeline import median_smooth, timeline_segments

ALL_MODELS = ("slr", "qr", "gmm-linear", "gmm-quadratic", "beta-linear", "beta-quadratic")
SWAP_MODELS = ALL_MODELS[2:]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FIT = 3


def bundled_data_path(name: str) -> Path:
    return Path(resources.files("swapfit") / "data" / name)


def _model_parts(name: str) -> tuple[str, str]:
    variant, family = name.split("-")
    return variant, family


def _out_dir(args) -> Path:
    out = args.out_dir or os.environ.get("SWAPFIT_OUT_DIR") or "swapfit-out"
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _load_pair(args):
    x_path = Path(args.x_file) if args.x_file else bundled_data_path("gdp.csv")
    y_path = Path(args.y_file) if args.y_file else bundled_data_path("public_debt.csv")
    a = load_series_csv(x_path)
    b = load_series_csv(y_path)
    pair = scale_pair(align_pair(a, b), args.scale)
    return pair, x_path, y_path


def _quarter_range(start: QuarterIndex, n: int) -> list[QuarterIndex]:
    out = []
    y, q = start.year, start.quarter
    for _ in range(n):
        out.append(QuarterIndex(y, q))
        q += 1
        if q == 5:
            y, q = y + 1, 1
    return out


def cmd_fit(args) -> int:
    out = _out_dir(args)
    pair, x_path, y_path = _load_pair(args)
    hx = fit_exponential(pair.x)
    hy = fit_exponential(pair.y)
    models = [m.strip() for m in args.models.split(",")] if args.models else list(ALL_MODELS)
    for m in models:
        if m not in ALL_MODELS:
            raise SwapfitError(f"unknown model {m!r}; choose from {', '.join(ALL_MODELS)}")
    comparison = []
    x = np.asarray(pair.x)
    y = np.asarray(pair.y)
    for name in models:
        if name in ("slr", "qr"):
            spec = ols_fit(x, y, LINEAR if name == "slr" else QUADRATIC)
            write_json(out / f"fit_{name}.json", {"model": spec.to_json_dict()})
            write_scatter_svg(out / f"scatter_{name}.svg", x, y, None, spec)
            comparison.append((name, spec))
            continue
        variant, family = _model_parts(name)
        cfg = SwapConfig(variant=variant, family=family, tol_g=args.tol,
                         max_iters=args.max_iters, restarts=args.restarts,
                         seed=args.seed)
        fit = run_swap(pair, cfg, hx, hy)
        write_json(out / f"fit_{name}.json", fit.to_json_dict())
        z = np.asarray(fit.final.z)
        p1 = np.asarray([p for _, p in fit.posteriors])
        write_points_csv(out / f"points_{name}.csv", pair.index, x, y, z, p1)
        write_scatter_svg(out / f"scatter_{name}.svg", x, y, z, fit.final.model)
        comparison.append((name, fit.final.model))
    write_comparison_csv(out / "comparison.csv", comparison)
    write_manifest(out, {"x": x_path, "y": y_path},
                   config={"command": "fit", "models": models, "scale": args.scale,
                           "tol": args.tol, "max_iters": args.max_iters,
                           "restarts": args.restarts},
                   seed=args.seed)
    for name, spec in comparison:
        coeffs = " ".join(f"{c:.4f}" for c in spec.coefficients)
        print(f"{name:<15} {spec.family:<10} {coeffs}")
    return EXIT_OK


def cmd_precheck(args) -> int:
    out = _out_dir(args)
    pair, x_path, y_path = _load_pair(args)
    report = bidirectional_report(pair, args.max_lag)
    ks = {}
    for label, sample in (("x", pair.x), ("y", pair.y)):
        rate = fit_exponential(sample)
        res = ks_test_exponential(sample, rate.lam)
        ks[label] = {"lambda": rate.lam, "d": res.d_statistic,
                     "p": res.p_value, "n": res.n}
    payload = {"causality": report.to_json_dict(), "ks_exponential": ks,
               "note": "K-S uses the rate estimated from the same sample; "
                       "the p-value is descriptive, not distribution-free."}
    write_json(out / "precheck.json", payload)
    write_manifest(out, {"x": x_path, "y": y_path},
                   config={"command": "precheck", "scale": args.scale,
                           "max_lag": args.max_lag}, seed=None)
    print(format_granger_table(report))
    for label, row in ks.items():
        print(f"K-S {label}: lambda={row['lambda']:.4f} d={row['d']:.4f} p={row['p']:.3e}")
    return EXIT_OK if report.bidirectional else 1


def cmd_gof(args) -> int:
    out = _out_dir(args)
    run_dir = Path(args.run_dir or out)
    reports = {}
    for name in SWAP_MODELS:
        path = run_dir / f"fit_{name}.json"
        if not path.exists():
            continue
        fit = json.loads(path.read_text())
        p1 = np.asarray([p for _, p in fit["posteriors"]])
        rep = fit_alpha_beta(p1)
        reports[name] = rep
        write_json(out / f"gof_{name}.json", rep.to_json_dict())
        write_histogram_csv(out / f"gof_{name}_hist.csv", rep.histogram)
    if not reports:
        raise MissingFitError(f"no swap fit artifacts found under {run_dir}")
    def show(v):
        return "n/a" if v is None else f"{v:.4f}"

    for name, rep in sorted(reports.items()):
        print(f"{name:<15} alpha={show(rep.alpha_hat)} beta={show(rep.beta_hat)} "
              f"gamma={rep.gamma:.4f}")
    for variant in (GMM, BETA):
        lin = reports.get(f"{variant}-linear")
        quad = reports.get(f"{variant}-quadratic")
        if lin and quad:
            if None in (lin.alpha_hat, lin.beta_hat, quad.alpha_hat, quad.beta_hat):
                print(f"{variant}: one-sided posteriors, no separation comparison")
                continue
            better = (quad.alpha_hat < lin.alpha_hat and quad.beta_hat < lin.beta_hat)
            verdict = "quadratic separates better" if better else "linear separates better"
            print(f"{variant}: {verdict} (smaller shape estimates mean cleaner separation)")
    return EXIT_OK


def cmd_timeline(args) -> int:
    out = _out_dir(args)
    run_dir = Path(args.run_dir or out)
    name = f"{args.variant}-{args.family}"
    fit_path = run_dir / f"fit_{name}.json"
    if not fit_path.exists():
        raise MissingFitError(f"missing fit artifact {fit_path}")
    fit = json.loads(fit_path.read_text())
    points = run_dir / f"points_{name}.csv"
    if not points.exists():
        raise MissingFitError(f"missing points artifact {points}")
    import csv as _csv
    dates, z = [], []
    with points.open(newline="") as fh:
        for row in _csv.DictReader(fh):
            yy, mm, _ = row["date"].split("-")
            dates.append(QuarterIndex(int(yy), (int(mm) - 1) // 3 + 1))
            z.append(int(row["z"]))
    smoothed = median_smooth(z, args.smooth_window)
    segments = timeline_segments(z, dates, args.smooth_window)
    write_timeline_csv(out / "timeline.csv", dates, z, smoothed)
    write_json(out / "timeline_segments.json",
               {"model": name, "smooth_window": args.smooth_window,
                "segments": [s.to_json_dict() for s in segments]})
    for seg in segments:
        print(f"{seg.start}..{seg.end}  {seg.driver}")
    return EXIT_OK


def cmd_synth(args) -> int:
    out = _out_dir(args)
    scenario_path = Path(args.scenario)
    if not scenario_path.exists():
        raise SwapfitError(f"scenario file not found: {scenario_path}")
    try:
        scenario = json.loads(scenario_path.read_text())
        truth = SyntheticTruth(
            model=ModelSpec(scenario["family"], tuple(scenario["coefficients"])),
            z_true=tuple(int(v) for v in scenario["z_true"]),
            sigma0_sq=float(scenario["sigma0_sq"]),
            sigma1_sq=float(scenario["sigma1_sq"]),
            seed=int(scenario["seed"]),
        )
        n = len(truth.z_true)
        x_rate = float(scenario.get("x_rate", 1.0))
        y_rate = float(scenario.get("y_rate", 1.0))
    except (KeyError, TypeError, ValueError) as exc:
        raise SwapfitError(f"bad scenario file: {exc}") from None
    pair = generate(truth, n, x_rate, y_rate)
    quarters = _quarter_range(QuarterIndex(1960, 1), n)
    import csv as _csv
    for fname, values in (("synth_x.csv", pair.x), ("synth_y.csv", pair.y)):
        with (out / fname).open("w", newline="", encoding="utf-8") as fh:
            w = _csv.writer(fh)
            w.writerow(["date", "value"])
            for q, v in zip(quarters, values):
                w.writerow([q.start_date().isoformat(), repr(float(v))])
    write_json(out / "truth.json", truth.to_json_dict())
    if args.brute_force:
        hx = fit_exponential(pair.x)
        hy = fit_exponential(pair.y)
        z_star, obj = brute_force_best_assignment(pair, truth.model.family, hx, hy)
        write_json(out / "oracle.json",
                   {"z_star": list(z_star), "objective": obj})
        print(f"oracle objective: {obj:.6f}")
    write_manifest(out, {"scenario": scenario_path},
                   config={"command": "synth", "n": n,
                           "x_rate": x_rate, "y_rate": y_rate},
                   seed=truth.seed)
    print(f"wrote {n}-point scenario to {out}")
    return EXIT_OK


def _apply_config_file(args, parser) -> None:
    """Fill unset flags from the JSON config file; explicit flags win."""
    if not args.config:
        return
    path = Path(args.config)
    if not path.exists():
        raise SwapfitError(f"config file not found: {path}")
    values = json.loads(path.read_text())
    for key, value in values.items():
        attr = key.replace("-", "_")
        if getattr(args, attr, None) is None and hasattr(args, attr):
            setattr(args, attr, value)


_DEFAULTS = {
    "scale": 1e-6, "seed": 42, "restarts": 20, "max_iters": 500,
    "tol": 1e-8, "smooth_window": 5, "max_lag": 8,
}


def _finalize_defaults(args) -> None:
    for key, value in _DEFAULTS.items():
        if getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swapfit",
                                     description="Latent causal-direction regression toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, data=True):
        p.add_argument("--config", help="JSON config file; flags override its entries")
        p.add_argument("--out-dir", help="output directory (or $SWAPFIT_OUT_DIR)")
        if data:
            p.add_argument("--x-file", help="CSV for the x series (default: bundled GDP)")
            p.add_argument("--y-file", help="CSV for the y series (default: bundled debt)")
            p.add_argument("--scale", type=float, help="multiplicative scale (default 1e-6)")

    p = sub.add_parser("fit", help="fit the six regression models")
    add_common(p)
    p.add_argument("--models", help="comma list from: " + ",".join(ALL_MODELS))
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("precheck", help="Granger/ADF/K-S pre-checks")
    add_common(p)
    p.add_argument("--max-lag", type=int)
    p.set_defaults(func=cmd_precheck)

    p = sub.add_parser("gof", help="separation goodness-of-fit of stored swap fits")
    add_common(p, data=False)
    p.add_argument("--run-dir", help="directory holding fit_*.json (default: out dir)")
    p.set_defaults(func=cmd_gof)

    p = sub.add_parser("timeline", help="causal-direction timeline from a stored fit")
    add_common(p, data=False)
    p.add_argument("--run-dir", help="directory holding fit artifacts")
    p.add_argument("--variant", choices=(GMM, BETA), default=GMM)
    p.add_argument("--family", choices=(LINEAR, QUADRATIC), default=QUADRATIC)
    p.add_argument("--smooth-window", type=int)
    p.set_defaults(func=cmd_timeline)

    p = sub.add_parser("synth", help="generate a synthetic scenario")
    add_common(p, data=False)
    p.add_argument("--scenario", required=True, help="scenario JSON file")
    p.add_argument("--brute-force", action="store_true",
                   help="also run the enumeration oracle (n <= 12)")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config_file(args, parser)
        _finalize_defaults(args)
        return args.func(args)
    except AllRestartsFailedError as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        return EXIT_FIT
    except (SwapfitError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
