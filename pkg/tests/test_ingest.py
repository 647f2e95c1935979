"""CSV ingest, quarter alignment and scaling."""
from datetime import date

import pytest
from hypothesis import given, strategies as st

from swapfit.errors import (
    DuplicateQuarterError,
    EmptyIntersectionError,
    NonFiniteValueError,
    NonPositiveFactorError,
    ParseError,
)
from swapfit.ingest import (
    QuarterIndex,
    RawSeries,
    align_pair,
    load_series_csv,
    quarter_from_date,
    scale_pair,
)


def write_csv(tmp_path, name, rows, header="date,value"):
    p = tmp_path / name
    p.write_text("\n".join([header] + rows) + "\n", encoding="utf-8")
    return p


class TestQuarterIndex:
    def test_ordering_and_str(self):
        assert QuarterIndex(1999, 4) < QuarterIndex(2000, 1)
        assert str(QuarterIndex(1966, 1)) == "1966Q1"

    def test_start_date_roundtrip(self):
        for year in (1966, 2023):
            for q in (1, 2, 3, 4):
                qi = QuarterIndex(year, q)
                assert quarter_from_date(qi.start_date()) == qi

    def test_bad_quarter_rejected(self):
        with pytest.raises(ValueError):
            QuarterIndex(2000, 5)

    def test_non_boundary_date_rejected(self):
        with pytest.raises(ValueError):
            quarter_from_date(date(2000, 2, 1))
        with pytest.raises(ValueError):
            quarter_from_date(date(2000, 1, 2))


class TestLoadCsv:
    def test_basic_load_sorted(self, tmp_path):
        p = write_csv(tmp_path, "s.csv",
                      ["2000-04-01,2.0", "2000-01-01,1.0", "2000-07-01,3.0"])
        s = load_series_csv(p)
        assert s.values == (1.0, 2.0, 3.0)
        assert s.index[0] == QuarterIndex(2000, 1)
        assert s.name == "s"

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_series_csv(tmp_path / "nope.csv")

    def test_missing_column(self, tmp_path):
        p = write_csv(tmp_path, "s.csv", ["2000-01-01,1.0"], header="when,value")
        with pytest.raises(ParseError):
            load_series_csv(p)

    def test_bad_date_reports_row(self, tmp_path):
        p = write_csv(tmp_path, "s.csv", ["2000-01-01,1.0", "not-a-date,2.0"])
        with pytest.raises(ParseError) as err:
            load_series_csv(p)
        assert err.value.row == 2

    def test_mid_quarter_date_rejected(self, tmp_path):
        p = write_csv(tmp_path, "s.csv", ["2000-02-01,1.0"])
        with pytest.raises(ParseError):
            load_series_csv(p)

    def test_bad_value(self, tmp_path):
        p = write_csv(tmp_path, "s.csv", ["2000-01-01,abc"])
        with pytest.raises(ParseError):
            load_series_csv(p)

    def test_nan_value(self, tmp_path):
        p = write_csv(tmp_path, "s.csv", ["2000-01-01,nan"])
        with pytest.raises(NonFiniteValueError):
            load_series_csv(p)

    def test_duplicate_quarter(self, tmp_path):
        p = write_csv(tmp_path, "s.csv", ["2000-01-01,1.0", "2000-01-01,2.0"])
        with pytest.raises(DuplicateQuarterError):
            load_series_csv(p)

    def test_custom_columns(self, tmp_path):
        p = write_csv(tmp_path, "s.csv", ["2000-01-01,7.5"], header="d,v")
        s = load_series_csv(p, date_column="d", value_column="v")
        assert s.values == (7.5,)


def series(name, *pts):
    return RawSeries(name=name, points=tuple(
        (QuarterIndex(y, q), v) for (y, q, v) in pts))


class TestAlignScale:
    def test_intersection(self):
        a = series("a", (2000, 1, 1.0), (2000, 2, 2.0), (2000, 3, 3.0))
        b = series("b", (2000, 2, 20.0), (2000, 3, 30.0), (2000, 4, 40.0))
        pair = align_pair(a, b)
        assert pair.x == (2.0, 3.0)
        assert pair.y == (20.0, 30.0)
        assert pair.index == (QuarterIndex(2000, 2), QuarterIndex(2000, 3))

    def test_empty_intersection(self):
        a = series("a", (2000, 1, 1.0), (2000, 2, 1.0))
        b = series("b", (2001, 1, 1.0), (2001, 2, 1.0))
        with pytest.raises(EmptyIntersectionError):
            align_pair(a, b)

    def test_scale_tracks_cumulative_factor(self):
        a = series("a", (2000, 1, 1.0), (2000, 2, 2.0))
        b = series("b", (2000, 1, 10.0), (2000, 2, 20.0))
        pair = scale_pair(scale_pair(align_pair(a, b), 0.5), 0.5)
        assert pair.scale_applied == pytest.approx(0.25)
        assert pair.x == pytest.approx((0.25, 0.5))

    @given(st.floats(max_value=0.0, allow_nan=False))
    def test_nonpositive_factor_rejected(self, factor):
        a = series("a", (2000, 1, 1.0), (2000, 2, 2.0))
        b = series("b", (2000, 1, 1.0), (2000, 2, 2.0))
        pair = align_pair(a, b)
        with pytest.raises(NonPositiveFactorError):
            scale_pair(pair, factor)

    def test_snapshot_loads(self, snapshot_pair):
        assert snapshot_pair.n == 229
        assert str(snapshot_pair.index[0]) == "1966Q1"
        assert str(snapshot_pair.index[-1]) == "2023Q1"
