"""Artifact emission: JSON/CSV writers, run manifest, SVG scatter."""
from __future__ import annotations

import csv
import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .models import ModelSpec, forward

_BLUE = "#1f77b4"    # inverse regime: y explanatory
_ORANGE = "#ff7f0e"  # forward regime: x explanatory


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n",
                    encoding="utf-8")


def write_manifest(out_dir: Path, inputs: dict[str, str | Path],
                   config: dict, seed: int | None) -> None:
    """Record input digests and the effective configuration for the run."""
    manifest = {
        "version": __version__,
        "inputs": {name: {"path": str(p), "sha256": sha256_file(p)}
                   for name, p in inputs.items()},
        "config": config,
        "seed": seed,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    write_json(out_dir / "manifest.json", manifest)


def write_points_csv(path: Path, index, x, y, z, p1) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["date", "x", "y", "z", "p1"])
        for q, xi, yi, zi, pi in zip(index, x, y, z, p1):
            w.writerow([q.start_date().isoformat(), repr(float(xi)),
                        repr(float(yi)), int(zi), repr(float(pi))])


def write_histogram_csv(path: Path, histogram) -> None:
    edges = np.linspace(0.0, 1.0, len(histogram) + 1)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["bin_left", "bin_right", "count"])
        for left, right, count in zip(edges[:-1], edges[1:], histogram):
            w.writerow([f"{left:.2f}", f"{right:.2f}", int(count)])


def write_timeline_csv(path: Path, index, z_raw, z_smooth) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["date", "z_raw", "z_smooth"])
        for q, zr, zs in zip(index, z_raw, z_smooth):
            w.writerow([q.start_date().isoformat(), int(zr), int(zs)])


def write_scatter_svg(path: Path, x, y, z, model: ModelSpec | None,
                      width: int = 800, height: int = 600) -> None:
    """Minimal standalone scatter plot with group coloring and the fit curve."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.full(x.size, -1, dtype=int) if z is None else np.asarray(z, dtype=int)
    pad = 50
    x_lo, x_hi = float(np.min(x)), float(np.max(x))
    y_lo, y_hi = float(np.min(y)), float(np.max(y))
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0

    def sx(v):
        return pad + (v - x_lo) / x_span * (width - 2 * pad)

    def sy(v):
        return height - pad - (v - y_lo) / y_span * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if model is not None:
        grid = np.linspace(x_lo, x_hi, 200)
        pts = " ".join(f"{sx(v):.2f},{sy(forward(model, v)):.2f}" for v in grid)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>')
    for xi, yi, zi in zip(x, y, z):
        color = "#555555" if zi < 0 else (_ORANGE if zi == 1 else _BLUE)
        parts.append(f'<circle cx="{sx(xi):.2f}" cy="{sy(yi):.2f}" r="3.5" '
                     f'fill="{color}" fill-opacity="0.8"/>')
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")


def write_comparison_csv(path: Path, rows: list[tuple[str, ModelSpec]]) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["model", "family", "coefficients"])
        for name, m in rows:
            w.writerow([name, m.family,
                        " ".join(repr(float(c)) for c in m.coefficients)])
