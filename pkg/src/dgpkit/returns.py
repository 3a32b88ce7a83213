"""Gross, net and log returns and the two means of returns.

All values are decimals (0.05 is five percent). Percent only shows up when
reports are rendered.

The geometric mean of returns is the arithmetic average of log returns,
``(1/n) ln(S_n / S_0)``; it depends only on the endpoints of the price path.
The arithmetic mean of returns is the average of net returns and depends on
the whole path.
"""

from __future__ import annotations

import datetime as dt
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InsufficientData


class Convention(str, enum.Enum):
    NET = "net"
    LOG = "log"
    GROSS = "gross"


def _as_convention(value) -> Convention:
    try:
        return Convention(value)
    except ValueError:
        raise ValueError(f"unknown return convention {value!r}") from None


@dataclass(frozen=True)
class PriceSeries:
    """Strictly positive values observed at strictly increasing dates.

    ``dates`` is optional; simulated and tabulated paths often carry only an
    implicit period index.
    """

    values: np.ndarray
    dates: tuple[dt.date, ...] | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise DomainError("price values must be one-dimensional")
        bad = np.flatnonzero(~(values > 0) | ~np.isfinite(values))
        if bad.size:
            i = int(bad[0])
            raise DomainError(f"price at position {i} is not strictly positive: {values[i]!r}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.dates is not None:
            dates = tuple(self.dates)
            if len(dates) != len(values):
                raise DomainError("dates and values differ in length")
            for i in range(1, len(dates)):
                if not dates[i] > dates[i - 1]:
                    raise DomainError(f"dates not strictly increasing at position {i}: {dates[i]}")
            object.__setattr__(self, "dates", dates)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def first(self) -> float:
        return float(self.values[0])

    @property
    def last(self) -> float:
        return float(self.values[-1])

    @property
    def periods(self) -> int:
        """Number of return periods, one less than the number of observations."""
        return len(self.values) - 1


def as_prices(prices) -> PriceSeries:
    if isinstance(prices, PriceSeries):
        return prices
    if getattr(prices, "forbids_returns", False):
        # zero-cost value processes start at 0; see long_short.BhlsSeries
        prices.returns()
    return PriceSeries(np.asarray(prices, dtype=float))


_DOMAIN_LOW = {Convention.NET: -1.0, Convention.LOG: -math.inf, Convention.GROSS: 0.0}


@dataclass(frozen=True)
class ReturnSeries:
    """Per-period returns tagged with their convention."""

    values: np.ndarray
    convention: Convention = Convention.NET
    period: str = "monthly"

    def __post_init__(self):
        conv = _as_convention(self.convention)
        object.__setattr__(self, "convention", conv)
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise DomainError("return values must be one-dimensional")
        if np.isnan(values).any():
            raise DomainError("return values contain NaN")
        low = _DOMAIN_LOW[conv]
        if conv is not Convention.LOG and values.size and values.min() <= low:
            i = int(np.argmin(values))
            raise DomainError(f"{conv.value} return at position {i} must exceed {low}: {values[i]!r}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def to(self, convention) -> "ReturnSeries":
        return convert(self, convention)


@dataclass(frozen=True)
class MeanSummary:
    geometric_mean_log: float
    arithmetic_mean_net: float
    stdev_log: float
    stdev_net: float
    count: int


def returns_from_prices(prices, convention=Convention.NET, period: str = "monthly") -> ReturnSeries:
    """Per-period returns of a price path under ``convention``."""
    conv = _as_convention(convention)
    p = as_prices(prices)
    if len(p) < 2:
        raise InsufficientData("at least two prices are needed for a return")
    gross = p.values[1:] / p.values[:-1]
    if conv is Convention.GROSS:
        values = gross
    elif conv is Convention.NET:
        values = gross - 1.0
    else:
        values = np.log(p.values[1:]) - np.log(p.values[:-1])
    return ReturnSeries(values, conv, period)


def convert(series: ReturnSeries, to) -> ReturnSeries:
    """Re-express ``series`` in another convention.

    Uses ``log1p``/``expm1`` so small returns round-trip without cancellation.
    """
    target = _as_convention(to)
    src = series.convention
    v = series.values
    if src is target:
        return series
    # route everything through net
    if src is Convention.LOG:
        net = np.expm1(v)
    elif src is Convention.GROSS:
        net = v - 1.0
    else:
        net = v
    if target is Convention.NET:
        out = net
    elif target is Convention.GROSS:
        out = net + 1.0
    else:
        if net.size and net.min() <= -1.0:
            raise DomainError("net return <= -1 has no log equivalent")
        out = np.log1p(net)
    return ReturnSeries(out, target, series.period)


def geometric_mean(prices) -> float:
    """Average log return, ``ln(S_n / S_0) / n``."""
    p = as_prices(prices)
    if len(p) < 2:
        raise InsufficientData("at least two prices are needed for a return")
    return (math.log(p.last) - math.log(p.first)) / p.periods


def arithmetic_mean(series) -> float:
    """Simple average of net returns."""
    if isinstance(series, ReturnSeries):
        if series.convention is not Convention.NET:
            raise DomainError(f"arithmetic mean expects net returns, got {series.convention.value}")
        values = series.values
    else:
        values = ReturnSeries(series, Convention.NET).values
    if values.size == 0:
        raise InsufficientData("mean of an empty series")
    return float(values.mean())


def compound_on_mean(s0: float, mean: float, n: int, convention=Convention.LOG) -> float:
    """Value after ``n`` periods of a constant per-period ``mean`` return."""
    conv = _as_convention(convention)
    if not s0 > 0:
        raise DomainError("initial value must be positive")
    if n < 0:
        raise DomainError("number of periods must be non-negative")
    if conv is Convention.LOG:
        return s0 * math.exp(n * mean)
    if conv is Convention.NET:
        if mean <= -1:
            raise DomainError("net mean must exceed -1")
        return s0 * (1.0 + mean) ** n
    if mean <= 0:
        raise DomainError("gross mean must be positive")
    return s0 * mean**n


def summarize(prices) -> MeanSummary:
    p = as_prices(prices)
    if len(p) < 3:
        raise InsufficientData("standard deviations need at least two returns")
    net = returns_from_prices(p, Convention.NET).values
    log = returns_from_prices(p, Convention.LOG).values
    return MeanSummary(
        geometric_mean_log=geometric_mean(p),
        arithmetic_mean_net=float(net.mean()),
        stdev_log=float(log.std(ddof=1)),
        stdev_net=float(net.std(ddof=1)),
        count=len(net),
    )
