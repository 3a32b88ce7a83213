"""Long-short portfolios: periodic-rebalancing (PRLS) and buy-and-hold (BHLS).

A zero-cost portfolio starts at value 0, so no return can be defined on its
value process. What the literature calls its return is a difference of leg
returns, which is what the helpers here compute, always from the legs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InsufficientData, ReturnUndefined, ShapeError, ZeroCostViolation
from .returns import Convention, as_prices, returns_from_prices


@dataclass(frozen=True)
class LegPair:
    """End-of-period leg values of a PRLS portfolio.

    Both legs restart every period at ``initial_capital``; ``long_values[t]``
    and ``short_values[t]`` are what that capital became by the end of period t.
    """

    long_values: np.ndarray
    short_values: np.ndarray
    initial_capital: float

    def __post_init__(self):
        lv = np.asarray(self.long_values, dtype=float)
        sv = np.asarray(self.short_values, dtype=float)
        if lv.shape != sv.shape or lv.ndim != 1:
            raise ShapeError(f"leg lengths differ: {lv.shape} vs {sv.shape}")
        if not self.initial_capital > 0:
            raise DomainError("initial capital must be positive")
        if not ((lv > 0).all() and (sv > 0).all()):
            raise DomainError("leg values must be positive")
        object.__setattr__(self, "long_values", lv)
        object.__setattr__(self, "short_values", sv)


class BhlsSeries:
    """Value of a buy-and-hold long-short portfolio, long minus short.

    Starts at exactly zero and may go negative. Returns are undefined on it.
    """

    forbids_returns = True

    def __init__(self, values):
        values = np.array(values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ShapeError("BHLS series must be a non-empty vector")
        if values[0] != 0.0:
            raise ZeroCostViolation(f"BHLS value must start at 0, got {values[0]!r}")
        values.setflags(write=False)
        self.values = values

    def __len__(self) -> int:
        return len(self.values)

    def __repr__(self) -> str:
        return f"BhlsSeries({self.values.tolist()!r})"

    def returns(self, convention=Convention.NET):
        raise ReturnUndefined("a zero-cost value process has no meaningful return; use leg returns")

    @property
    def terminal(self) -> float:
        return float(self.values[-1])


@dataclass(frozen=True)
class PrlsStats:
    mean_diff: float
    var_diff: float
    cov_ls: float


class ExcessPath(NamedTuple):
    excess: np.ndarray
    values: np.ndarray
    mean: float


class GapResult(NamedTuple):
    mmtb: float
    xmfv: float
    underestimate_frac: float


def net_return_difference(l1: float, s1: float, s0: float) -> float:
    """``(L1 - S1) / S0`` for legs that both started at ``s0``."""
    if not s0 > 0:
        raise DomainError("initial leg value must be positive")
    return (l1 - s1) / s0


def prls_stats(pair: LegPair) -> PrlsStats:
    """Mean and sample variance of the PRLS net-return differences.

    Computed from the leg price moments: the mean is ``(mean(L) - mean(S)) / S0``
    and the variance ``(var L + var S - 2 cov(L, S)) / S0**2``.
    """
    lv, sv, s0 = pair.long_values, pair.short_values, pair.initial_capital
    if len(lv) < 2:
        raise InsufficientData("PRLS variance needs at least two periods")
    cov = np.cov(lv, sv, ddof=1)
    var_diff = (cov[0, 0] + cov[1, 1] - 2.0 * cov[0, 1]) / s0**2
    return PrlsStats(
        mean_diff=float((lv.mean() - sv.mean()) / s0),
        var_diff=float(max(var_diff, 0.0)),
        cov_ls=float(cov[0, 1]),
    )


def bhls_from_legs(long, short) -> BhlsSeries:
    lv = as_prices(long).values
    sv = as_prices(short).values
    if lv.shape != sv.shape:
        raise ShapeError(f"leg lengths differ: {len(lv)} vs {len(sv)}")
    if lv[0] != sv[0]:
        raise ZeroCostViolation(f"legs start at {lv[0]} and {sv[0]}; a zero-cost setup needs equal capital")
    return BhlsSeries(lv - sv)


def leg_return_differences(long, short, convention=Convention.NET) -> np.ndarray:
    """Per-period ``return(long) - return(short)``."""
    lr = returns_from_prices(long, convention).values
    sr = returns_from_prices(short, convention).values
    if lr.shape != sr.shape:
        raise ShapeError(f"leg lengths differ: {len(lr) + 1} vs {len(sr) + 1}")
    return lr - sr


def leg_return_diff_mean(long, short, convention=Convention.NET) -> float:
    return float(leg_return_differences(long, short, convention).mean())


def compound_on_excess(start: float, risky, riskfree, convention=Convention.LOG) -> ExcessPath:
    """Compound ``start`` through the risky-minus-riskfree return differences.

    ``values[0]`` is ``start``; ``mean`` is the simple average of the excess
    returns.
    """
    if not start > 0:
        raise DomainError("start value must be positive")
    conv = Convention(convention)
    if conv is Convention.GROSS:
        raise DomainError("excess returns are defined for net or log returns")
    excess = leg_return_differences(risky, riskfree, conv)
    if conv is Convention.LOG:
        growth = np.exp(np.cumsum(excess))
    else:
        if (excess <= -1).any():
            i = int(np.argmax(excess <= -1))
            raise DomainError(f"net excess return {excess[i]!r} at period {i + 1} wipes out the position")
        growth = np.cumprod(1.0 + excess)
    values = np.concatenate([[start], start * growth])
    return ExcessPath(excess=excess, values=values, mean=float(excess.mean()))


def _gap(mmtb: float, xmfv: float) -> GapResult:
    frac = (mmtb - xmfv) / mmtb if mmtb != 0 else 0.0
    return GapResult(mmtb, xmfv, frac)


def prop2_gap(ybar: float, r: float, n: int, base: float = 100.0) -> GapResult:
    """Market-minus-Treasury gap versus the compounded-excess gap.

    ``mmtb`` holds the market and the risk-free asset separately, each
    compounded at its own log rate; ``xmfv`` compounds the excess
    ``ybar - r`` against a zero-rate asset.
    """
    if not base > 0:
        raise DomainError("base must be positive")
    mmtb = base * (math.exp(n * ybar) - math.exp(n * r))
    xmfv = base * math.expm1(n * (ybar - r))
    return _gap(mmtb, xmfv)


def prop2_gap_net(ybar: float, r: float, n: int, base: float = 100.0) -> GapResult:
    """Like :func:`prop2_gap` but the excess is a difference of net returns.

    The net excess is ``(e^ybar - 1) - (e^r - 1)``, compounded discretely.
    """
    if not base > 0:
        raise DomainError("base must be positive")
    mmtb = base * (math.exp(n * ybar) - math.exp(n * r))
    net_excess = math.exp(ybar) - math.exp(r)
    xmfv = base * ((1.0 + net_excess) ** n - 1.0)
    return _gap(mmtb, xmfv)


def prop2_gap_discrete(market_rate: float, riskfree_rate: float, steps: int,
                       steps_per_year: int = 365, base: float = 1.0) -> GapResult:
    """Gap for simple annual rates compounded per step, e.g. 30 days of 365ths."""
    m = market_rate / steps_per_year
    f = riskfree_rate / steps_per_year
    mmtb = base * ((1.0 + m) ** steps - (1.0 + f) ** steps)
    xmfv = base * ((1.0 + m - f) ** steps - 1.0)
    return _gap(mmtb, xmfv)


def corollary1_check(ybar: float, r: float, delta: float, n: int) -> bool:
    """True iff raising both rates by ``delta`` strictly widens the MmTb gap."""
    raised = math.exp(n * (ybar + delta)) - math.exp(n * (r + delta))
    return raised > math.exp(n * ybar) - math.exp(n * r)


def power_inequality(y: float, x: float, n: int) -> bool:
    """True iff ``(y - x)**n < y**n - x**n``.

    Holds for y > x > 0 and n >= 2. At x == 0 both sides are equal for
    every n, so the strict comparison is False there.
    """
    return (y - x) ** n < y**n - x**n
