"""Terminal wealth of buy-and-hold and periodic-rebalancing strategies.

A periodic-rebalancing (PR) strategy restarts every period with the same
capital ``S0`` and takes out the period's gain or loss ``S0 * mu_t`` as cash.
That cash is deposited (or financed) at the risk-free rate until the end of
the horizon. Rate alignment follows the literal accumulation formula:

    cash_T = S0 * sum_{t=1}^{n-1} mu_t * prod_{s=t}^{n-1} (1 + r_s) + S0 * mu_n

so the flow realized at the end of period ``t`` earns ``r_t, ..., r_{n-1}``
and the final flow earns nothing. A rate path therefore needs ``n - 1``
entries; a path of length ``n`` is accepted and its last entry ignored, which
is what a monthly rate file spanning the same months as the returns gives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ShapeError
from .returns import Convention, ReturnSeries


@dataclass(frozen=True)
class RatePath:
    """Per-period net risk-free rates, as decimals per period."""

    rates: np.ndarray
    dates: tuple | None = None

    def __post_init__(self):
        rates = np.asarray(self.rates, dtype=float)
        if rates.ndim != 1:
            raise DomainError("rates must be one-dimensional")
        if rates.size and not (rates > -1).all():
            raise DomainError("every risk-free rate must exceed -1")
        rates.setflags(write=False)
        object.__setattr__(self, "rates", rates)

    @classmethod
    def constant(cls, annual_rate: float, n: int, periods_per_year: int = 12) -> "RatePath":
        """``n`` periods of ``annual_rate / periods_per_year``.

        Simple division, not ``(1 + r)**(1/12) - 1``: a 3% year is 0.25% a
        month.
        """
        return cls(np.full(n, annual_rate / periods_per_year))

    def __len__(self) -> int:
        return len(self.rates)


@dataclass(frozen=True)
class LedgerResult:
    terminal_total: float
    position_value: float
    cash_compounded: float
    cash_simple_sum: float
    per_period_cash: np.ndarray


class FlatResult(NamedTuple):
    final: float
    pnl_sum: float


def _net_values(returns) -> np.ndarray:
    if isinstance(returns, ReturnSeries):
        return returns.to(Convention.NET).values
    return ReturnSeries(returns, Convention.NET).values


def _growth_factors(rates, n: int) -> np.ndarray:
    """``prod_{s=t}^{n-1} (1 + r_s)`` for t = 1..n, with 1 for t = n.

    A scalar ``rates`` is a constant per-period rate.
    """
    if not isinstance(rates, RatePath) and np.ndim(rates) == 0:
        rates = RatePath(np.full(max(n - 1, 0), float(rates)))
    r = rates.rates if isinstance(rates, RatePath) else RatePath(rates).rates
    if n == 0:
        if len(r) > 0:
            raise ShapeError(f"{len(r)} rates supplied for an empty return series")
        return np.empty(0)
    if len(r) not in (n - 1, n):
        raise ShapeError(f"rate path has {len(r)} entries; expected {n - 1} or {n} for {n} periods")
    r = r[: n - 1]
    tail = np.cumprod((1.0 + r)[::-1])[::-1]
    return np.append(tail, 1.0)


def bh_terminal(s0: float, returns: ReturnSeries) -> float:
    """Buy-and-hold value after compounding ``s0`` through every return."""
    if not s0 > 0:
        raise DomainError("initial value must be positive")
    if len(returns) == 0:
        return float(s0)
    if returns.convention is Convention.LOG:
        return float(s0 * np.exp(returns.values.sum()))
    gross = returns.to(Convention.GROSS).values
    return float(s0 * np.prod(gross))


def pr_terminal_flat(s0: float, mean_net: float, n: int) -> FlatResult:
    """PR terminal value ignoring interest: ``S0 * (1 + n * mean)``."""
    if not s0 > 0:
        raise DomainError("initial value must be positive")
    if n < 0:
        raise DomainError("number of periods must be non-negative")
    pnl = s0 * mean_net * n
    return FlatResult(final=s0 + pnl, pnl_sum=pnl)


def pr_terminal_compounded(s0: float, net_returns, rates) -> LedgerResult:
    """PR terminal wealth with each period's cash compounded at ``rates``."""
    if not s0 > 0:
        raise DomainError("initial value must be positive")
    mu = _net_values(net_returns)
    growth = _growth_factors(rates, len(mu))
    cash = s0 * mu
    compounded = float(cash @ growth) if len(mu) else 0.0
    cash.setflags(write=False)
    return LedgerResult(
        terminal_total=s0 + compounded,
        position_value=float(s0),
        cash_compounded=compounded,
        cash_simple_sum=float(cash.sum()),
        per_period_cash=cash,
    )


def mean_on_fixed_capital(s0: float, mean_net: float, n: int, rates) -> float:
    """Cash from ``n`` identical flows ``S0 * mean`` compounded at ``rates``.

    The returned principal ``S0`` is excluded.
    """
    if not s0 > 0:
        raise DomainError("initial value must be positive")
    if n < 0:
        raise DomainError("number of periods must be non-negative")
    growth = _growth_factors(rates, n)
    return float(s0 * mean_net * growth.sum())
