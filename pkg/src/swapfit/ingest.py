"""Loading, aligning and scaling the quarterly CSV inputs."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from datetime import date
from pathlib import Path

from .errors import (
    DuplicateQuarterError,
    EmptyIntersectionError,
    NonFiniteValueError,
    NonPositiveFactorError,
    ParseError,
)

# First day of each quarter; any other date is rejected rather than bucketed,
# so silent drift in the source files cannot pass unnoticed.
_QUARTER_STARTS = {(1, 1): 1, (4, 1): 2, (7, 1): 3, (10, 1): 4}


@dataclass(frozen=True, order=True)
class QuarterIndex:
    year: int
    quarter: int

    def __post_init__(self):
        if self.quarter not in (1, 2, 3, 4):
            raise ValueError(f"quarter must be 1..4, got {self.quarter}")

    def __str__(self) -> str:
        return f"{self.year}Q{self.quarter}"

    def start_date(self) -> date:
        return date(self.year, 3 * (self.quarter - 1) + 1, 1)


def quarter_from_date(d: date) -> QuarterIndex:
    """Map a quarter-boundary date to its QuarterIndex; reject any other day."""
    q = _QUARTER_STARTS.get((d.month, d.day))
    if q is None:
        raise ValueError(f"{d.isoformat()} is not the first day of a quarter")
    return QuarterIndex(d.year, q)


@dataclass(frozen=True)
class RawSeries:
    name: str
    points: tuple[tuple[QuarterIndex, float], ...]

    @property
    def index(self) -> tuple[QuarterIndex, ...]:
        return tuple(q for q, _ in self.points)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.points)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class SeriesPair:
    """Aligned bivariate quarterly sample; x is the GDP role, y the debt role."""

    x: tuple[float, ...]
    y: tuple[float, ...]
    index: tuple[QuarterIndex, ...] = field(default=())
    scale_applied: float = 1.0

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have equal length")
        if self.index and len(self.index) != len(self.x):
            raise ValueError("index length must match data length")
        if len(self.x) < 2:
            raise ValueError("need at least two observations")

    @property
    def n(self) -> int:
        return len(self.x)


def load_series_csv(path: str | Path, date_column: str = "date",
                    value_column: str = "value", name: str | None = None) -> RawSeries:
    """Read one quarterly series from a CSV file with a header row.

    Dates must be ISO YYYY-MM-DD on quarter boundaries; values must parse as
    finite floats. Rows come back sorted by quarter, duplicates are rejected.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(str(path))
    points: dict[QuarterIndex, float] = {}
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or date_column not in reader.fieldnames \
                or value_column not in reader.fieldnames:
            raise ParseError(0, f"missing column(s): need {date_column!r} and {value_column!r}")
        for rownum, row in enumerate(reader, start=1):
            raw_date = (row.get(date_column) or "").strip()
            raw_value = (row.get(value_column) or "").strip()
            try:
                d = date.fromisoformat(raw_date)
            except ValueError as exc:
                raise ParseError(rownum, f"bad date {raw_date!r}: {exc}") from None
            try:
                q = quarter_from_date(d)
            except ValueError as exc:
                raise ParseError(rownum, str(exc)) from None
            try:
                v = float(raw_value)
            except ValueError:
                raise ParseError(rownum, f"bad value {raw_value!r}") from None
            if not math.isfinite(v):
                raise NonFiniteValueError(rownum)
            if q in points:
                raise DuplicateQuarterError(f"duplicate quarter {q}")
            points[q] = v
    ordered = tuple(sorted(points.items()))
    return RawSeries(name=name or path.stem, points=ordered)


def align_pair(a: RawSeries, b: RawSeries) -> SeriesPair:
    """Intersect the two series on their quarter indices; a becomes x, b becomes y."""
    bmap = dict(b.points)
    common = [(q, va, bmap[q]) for q, va in a.points if q in bmap]
    if not common:
        raise EmptyIntersectionError(f"no overlapping quarters between {a.name!r} and {b.name!r}")
    return SeriesPair(
        x=tuple(va for _, va, _ in common),
        y=tuple(vb for _, _, vb in common),
        index=tuple(q for q, _, _ in common),
        scale_applied=1.0,
    )


def scale_pair(pair: SeriesPair, factor: float) -> SeriesPair:
    """Multiply both series by a positive factor, tracking the cumulative scale."""
    if not (factor > 0):
        raise NonPositiveFactorError(f"factor must be > 0, got {factor}")
    return replace(
        pair,
        x=tuple(v * factor for v in pair.x),
        y=tuple(v * factor for v in pair.y),
        scale_applied=pair.scale_applied * factor,
    )
