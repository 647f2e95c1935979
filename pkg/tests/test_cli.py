"""End-to-end CLI runs on small synthetic inputs."""
import csv
import json

import numpy as np
import pytest

from swapfit.cli import main
from swapfit.ingest import QuarterIndex
from swapfit.models import ModelSpec, forward


def write_quarterly_csv(path, values, start=(1990, 1)):
    year, q = start
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["date", "value"])
        for v in values:
            w.writerow([QuarterIndex(year, q).start_date().isoformat(), repr(float(v))])
            q += 1
            if q == 5:
                year, q = year + 1, 1


@pytest.fixture()
def small_data(tmp_path):
    rng = np.random.default_rng(14)
    n = 60
    truth = ModelSpec("linear", (1.8, 0.6))
    x = rng.exponential(2.0, n)
    y = forward(truth, x)
    z = (rng.random(n) < 0.5).astype(int)
    x = np.where(z == 0, np.maximum(x + rng.normal(0, 0.5, n), 0.01), x)
    y = np.where(z == 1, np.maximum(y + rng.normal(0, 0.05, n), 0.01), y)
    xf, yf = tmp_path / "x.csv", tmp_path / "y.csv"
    write_quarterly_csv(xf, x)
    write_quarterly_csv(yf, y)
    return xf, yf


def run(args):
    return main([str(a) for a in args])


class TestFit:
    def test_fit_writes_artifacts(self, small_data, tmp_path, capsys):
        xf, yf = small_data
        out = tmp_path / "run"
        code = run(["fit", "--x-file", xf, "--y-file", yf, "--scale", "1.0",
                    "--models", "slr,gmm-linear", "--restarts", "3",
                    "--out-dir", out])
        assert code == 0
        assert (out / "fit_slr.json").exists()
        assert (out / "fit_gmm-linear.json").exists()
        assert (out / "points_gmm-linear.csv").exists()
        assert (out / "scatter_gmm-linear.svg").exists()
        assert (out / "comparison.csv").exists()
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["seed"] == 42
        assert "sha256" in manifest["inputs"]["x"]
        assert "gmm-linear" in capsys.readouterr().out

    def test_unknown_model_is_input_error(self, small_data, tmp_path):
        xf, yf = small_data
        code = run(["fit", "--x-file", xf, "--y-file", yf, "--scale", "1.0",
                    "--models", "cubic", "--out-dir", tmp_path / "o"])
        assert code == 2

    def test_missing_file_is_input_error(self, tmp_path):
        code = run(["fit", "--x-file", tmp_path / "absent.csv",
                    "--out-dir", tmp_path / "o"])
        assert code == 2

    def test_config_file_and_flag_priority(self, small_data, tmp_path):
        xf, yf = small_data
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "x-file": str(xf), "y-file": str(yf), "scale": 1.0,
            "models": "gmm-linear", "restarts": 2, "seed": 7}))
        out = tmp_path / "cfgrun"
        code = run(["fit", "--config", cfg, "--seed", "11", "--out-dir", out])
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["seed"] == 11  # flag beats config entry
        assert manifest["config"]["restarts"] == 2

    def test_out_dir_env_fallback(self, small_data, tmp_path, monkeypatch):
        xf, yf = small_data
        out = tmp_path / "envrun"
        monkeypatch.setenv("SWAPFIT_OUT_DIR", str(out))
        code = run(["fit", "--x-file", xf, "--y-file", yf, "--scale", "1.0",
                    "--models", "slr"])
        assert code == 0
        assert (out / "fit_slr.json").exists()


class TestPrecheckGofTimeline:
    @pytest.fixture()
    def fit_run(self, small_data, tmp_path):
        xf, yf = small_data
        out = tmp_path / "fits"
        assert run(["fit", "--x-file", xf, "--y-file", yf, "--scale", "1.0",
                    "--models", "gmm-linear,beta-linear", "--restarts", "4",
                    "--out-dir", out]) == 0
        return out

    def test_precheck_exit_reflects_bidirectionality(self, small_data, tmp_path):
        # Independent noise in this sample: no Granger signal either way.
        xf, yf = small_data
        out = tmp_path / "pre"
        code = run(["precheck", "--x-file", xf, "--y-file", yf,
                    "--scale", "1.0", "--max-lag", "2", "--out-dir", out])
        payload = json.loads((out / "precheck.json").read_text())
        assert code == (0 if payload["causality"]["bidirectional"] else 1)
        assert "ks_exponential" in payload

    def test_gof_reads_stored_fits(self, fit_run, tmp_path, capsys):
        out = tmp_path / "gof"
        code = run(["gof", "--run-dir", fit_run, "--out-dir", out])
        assert code == 0
        assert (out / "gof_gmm-linear.json").exists()
        assert (out / "gof_gmm-linear_hist.csv").exists()
        assert "gamma" in (out / "gof_gmm-linear.json").read_text()

    def test_gof_without_fits_is_input_error(self, tmp_path):
        code = run(["gof", "--run-dir", tmp_path, "--out-dir", tmp_path / "o"])
        assert code == 2

    def test_timeline_roundtrip(self, fit_run, tmp_path, capsys):
        out = tmp_path / "tl"
        code = run(["timeline", "--run-dir", fit_run, "--variant", "gmm",
                    "--family", "linear", "--smooth-window", "3",
                    "--out-dir", out])
        assert code == 0
        segs = json.loads((out / "timeline_segments.json").read_text())
        assert segs["model"] == "gmm-linear"
        assert segs["segments"]
        rows = list(csv.DictReader((out / "timeline.csv").open()))
        assert len(rows) == 60

    def test_timeline_missing_fit(self, tmp_path):
        code = run(["timeline", "--run-dir", tmp_path, "--out-dir", tmp_path / "o"])
        assert code == 2


class TestSynth:
    def scenario(self, tmp_path, **overrides):
        base = {"family": "linear", "coefficients": [1.5, 0.4],
                "z_true": [1, 0, 1, 1, 0, 0, 1, 0], "sigma0_sq": 0.25,
                "sigma1_sq": 0.0016, "seed": 3, "x_rate": 0.5, "y_rate": 0.3}
        base.update(overrides)
        p = tmp_path / "scenario.json"
        p.write_text(json.dumps(base))
        return p

    def test_generates_csvs_and_truth(self, tmp_path):
        out = tmp_path / "sy"
        code = run(["synth", "--scenario", self.scenario(tmp_path),
                    "--out-dir", out])
        assert code == 0
        rows = list(csv.DictReader((out / "synth_x.csv").open()))
        assert len(rows) == 8
        truth = json.loads((out / "truth.json").read_text())
        assert truth["z_true"] == [1, 0, 1, 1, 0, 0, 1, 0]

    def test_brute_force_oracle_artifact(self, tmp_path):
        out = tmp_path / "sy2"
        code = run(["synth", "--scenario", self.scenario(tmp_path),
                    "--brute-force", "--out-dir", out])
        assert code == 0
        oracle = json.loads((out / "oracle.json").read_text())
        assert len(oracle["z_star"]) == 8
        assert np.isfinite(oracle["objective"])

    def test_bad_scenario(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"family": "linear"}))
        assert run(["synth", "--scenario", p, "--out-dir", tmp_path / "o"]) == 2

    def test_missing_scenario(self, tmp_path):
        assert run(["synth", "--scenario", tmp_path / "none.json",
                    "--out-dir", tmp_path / "o"]) == 2
