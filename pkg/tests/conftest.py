import json
from pathlib import Path

import pytest

from swapfit.densities import fit_exponential
from swapfit.ingest import align_pair, load_series_csv, scale_pair

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "src" / "swapfit" / "data"
GOLDEN = Path(__file__).resolve().parent / "golden" / "goldens.json"


@pytest.fixture(scope="session")
def snapshot_pair():
    gdp = load_series_csv(DATA / "gdp.csv")
    debt = load_series_csv(DATA / "public_debt.csv")
    return scale_pair(align_pair(gdp, debt), 1e-6)


@pytest.fixture(scope="session")
def snapshot_rates(snapshot_pair):
    return fit_exponential(snapshot_pair.x), fit_exponential(snapshot_pair.y)


@pytest.fixture(scope="session")
def goldens():
    return json.loads(GOLDEN.read_text(encoding="utf-8"))
