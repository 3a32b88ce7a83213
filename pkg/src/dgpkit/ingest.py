"""CSV ingestion for price and risk-free rate files.

Prices: header ``date,close``. Rates: header ``date,rate`` with monthly net
decimal rates. Dates are ISO-8601 unless another ``strptime`` pattern is given.
Every problem is reported with its 1-based line number; nothing is skipped.
"""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import DomainError, ParseError
from .returns import PriceSeries
from .value_process import RatePath

DEFAULT_COLUMNS = {"prices": "close", "rates": "rate"}


@dataclass(frozen=True)
class IngestSpec:
    path: Path
    kind: str = "prices"
    date_column: str = "date"
    value_column: str | None = None
    date_format: str = "%Y-%m-%d"

    def __post_init__(self):
        if self.kind not in DEFAULT_COLUMNS:
            raise ValueError(f"kind must be one of {sorted(DEFAULT_COLUMNS)}, got {self.kind!r}")
        object.__setattr__(self, "path", Path(self.path))

    @property
    def column(self) -> str:
        return self.value_column or DEFAULT_COLUMNS[self.kind]


def ingest(spec: IngestSpec) -> PriceSeries | RatePath:
    try:
        fh = open(spec.path, newline="")
    except OSError as exc:
        raise ParseError(f"{spec.path}: cannot open ({exc.strerror})") from exc
    with fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if not header:
            raise ParseError(f"{spec.path}: empty file, expected a header row")
        header = [h.strip() for h in header]
        reader.fieldnames = header
        for col in (spec.date_column, spec.column):
            if col not in header:
                raise ParseError(f"{spec.path}:1: missing column {col!r} (have {', '.join(header)})")
        dates, values = [], []
        for row in reader:
            line = reader.line_num
            raw_date = (row.get(spec.date_column) or "").strip()
            raw_value = (row.get(spec.column) or "").strip()
            try:
                date = dt.datetime.strptime(raw_date, spec.date_format).date()
            except ValueError:
                raise ParseError(f"{spec.path}:{line}: unparseable date {raw_date!r}") from None
            try:
                value = float(raw_value)
            except ValueError:
                raise ParseError(f"{spec.path}:{line}: unparseable value {raw_value!r}") from None
            if not math.isfinite(value):
                raise ParseError(f"{spec.path}:{line}: non-finite value {raw_value!r}")
            if spec.kind == "prices" and value <= 0:
                raise DomainError(f"{spec.path}:{line}: price must be positive, got {raw_value}")
            if spec.kind == "rates" and value <= -1:
                raise DomainError(f"{spec.path}:{line}: rate must exceed -1, got {raw_value}")
            if dates and date <= dates[-1]:
                raise ParseError(f"{spec.path}:{line}: date {date} does not follow {dates[-1]}")
            dates.append(date)
            values.append(value)
    if not values:
        raise ParseError(f"{spec.path}: no data rows")
    if spec.kind == "prices":
        return PriceSeries(values, tuple(dates))
    return RatePath(values, tuple(dates))


def read_prices(path, **kwargs) -> PriceSeries:
    return ingest(IngestSpec(path, "prices", **kwargs))


def read_rates(path, **kwargs) -> RatePath:
    return ingest(IngestSpec(path, "rates", **kwargs))


def describe(series) -> str:
    """One-line row count and date span."""
    dates = series.dates
    n = len(series)
    if not dates:
        return f"{n} observations"
    return f"{n} observations, {dates[0].isoformat()} to {dates[-1].isoformat()}"
