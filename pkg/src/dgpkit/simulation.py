"""Seeded GBM paths and the single-index alpha-inflation experiment.

Random numbers come from Philox4x64-10, a counter-based generator. Path ``i``
of master seed ``k`` uses key ``k`` and starts at counter block
``[0, 0, 0, i]``, so each path owns a disjoint stretch of 2**192 blocks and
its draws do not depend on which other paths were simulated, in what order,
or on how many workers ran them.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .econometrics import SIGNIFICANCE_THRESHOLDS, ols
from .errors import DomainError, ShapeError, SingularDesign
from .long_short import compound_on_excess
from .returns import Convention, as_prices

RNG_NAME = "Philox4x64-10 (numpy), key=master_seed, counter=[0, 0, 0, path_index]"

# annualized mean of monthly net returns and annualized volatility of the
# monthly S&P 500 index over the two decades used as market factors
DECADES = {
    "1990s": (0.154, 0.133),
    "2000s": (-0.013, 0.164),
}
MARKET_SEED = 19900101


@dataclass(frozen=True)
class GbmParams:
    """GBM with ``E[S_t / S_0] = exp(drift * t)``; ``t`` in years."""

    drift_annual: float
    vol_annual: float
    steps_per_year: int = 12
    horizon_periods: int = 120
    s0: float = 100.0

    def __post_init__(self):
        if self.vol_annual < 0:
            raise DomainError("volatility must be non-negative")
        if not self.s0 > 0:
            raise DomainError("initial price must be positive")
        if self.steps_per_year < 1 or self.horizon_periods < 1:
            raise DomainError("steps_per_year and horizon_periods must be at least 1")

    @property
    def dt(self) -> float:
        return 1.0 / self.steps_per_year

    @property
    def log_step_mean(self) -> float:
        return (self.drift_annual - 0.5 * self.vol_annual**2) * self.dt

    @property
    def log_step_sd(self) -> float:
        return self.vol_annual * math.sqrt(self.dt)


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int = 20231105

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be an unsigned 64-bit integer")

    def generator(self, path_index: int) -> np.random.Generator:
        if path_index < 0 or path_index >= 2**64:
            raise ValueError("path_index must be an unsigned 64-bit integer")
        bitgen = np.random.Philox(key=self.master_seed, counter=[0, 0, 0, path_index])
        return np.random.Generator(bitgen)


def gbm_path(params: GbmParams, seed: SeedSpec, path_index: int = 0) -> np.ndarray:
    """Prices ``S_0 .. S_H`` of one simulated path."""
    z = seed.generator(path_index).standard_normal(params.horizon_periods)
    steps = params.log_step_mean + params.log_step_sd * z
    return params.s0 * np.exp(np.concatenate([[0.0], np.cumsum(steps)]))


def synthetic_market(annual_mean: float, annual_vol: float, n: int = 120,
                     s0: float = 100.0, seed: int = MARKET_SEED) -> np.ndarray:
    """Monthly index path whose net returns have exactly the given moments.

    Monthly net returns are ``annual_mean / 12 + annual_vol / sqrt(12) * z``
    with ``z`` a seeded normal sample standardised to mean 0 and sample sd 1.
    """
    z = SeedSpec(seed).generator(0).standard_normal(n)
    z = (z - z.mean()) / z.std(ddof=1)
    net = annual_mean / 12.0 + annual_vol / math.sqrt(12.0) * z
    if (net <= -1).any():
        raise DomainError("moments imply a monthly loss of 100% or more")
    return s0 * np.concatenate([[1.0], np.cumprod(1.0 + net)])


def decade_market(name: str) -> np.ndarray:
    mean, vol = DECADES[name]
    return synthetic_market(mean, vol)


@dataclass(frozen=True)
class ExperimentReport:
    """Tabulated outcome of :func:`alpha_inflation_experiment`.

    ``inflation_counts[c]`` counts paths whose log-return alpha t-value is
    below ``c`` while the net-return one is above it. ``inflation_percentage``
    is a fraction: the summed counts over ``sig_beta_count``.
    """

    n_paths: int
    sig_beta_count: int
    inflation_counts: dict
    inflation_percentage: float
    excluded_paths: int = 0
    settings: dict = field(default_factory=dict)

    def recomputed_percentage(self) -> float:
        if self.sig_beta_count == 0:
            return float("nan")
        return sum(self.inflation_counts.values()) / self.sig_beta_count


def _path_tstats(market: np.ndarray, params: GbmParams, seed: SeedSpec, rf: float,
                 excess: bool, start: int, stop: int) -> np.ndarray:
    """Rows of (t_alpha_log, t_alpha_net, t_beta_log) per path; NaN if excluded."""
    m_log = np.diff(np.log(market))
    m_net = np.expm1(m_log)
    rf_dep = rf if excess else 0.0
    out = np.full((stop - start, 3), np.nan)
    for row, i in enumerate(range(start, stop)):
        prices = gbm_path(params, seed, i)
        y_log = np.diff(np.log(prices))
        y_net = np.expm1(y_log)  # same path, never resimulated
        try:
            fit_l = ols(y_log - rf_dep, m_log - rf)
            fit_n = ols(y_net - rf_dep, m_net - rf)
        except SingularDesign:
            continue
        out[row] = (fit_l.t_alpha, fit_n.t_alpha, fit_l.t_beta)
    return out


def _chunk(args):
    return args[-2], _path_tstats(*args)


def simulate_tstats(market, params: GbmParams, seed: SeedSpec, n_paths: int,
                    rf_annual: float = 0.03, excess: bool = True,
                    workers: int = 1, chunk_size: int = 1000) -> np.ndarray:
    """Per-path t-values, shape ``(n_paths, 3)``, ordered by path index."""
    m = as_prices(market).values
    h = params.horizon_periods
    if len(m) < h + 1:
        raise ShapeError(f"market has {len(m) - 1} periods, horizon needs {h}")
    m = m[: h + 1]
    rf = rf_annual / params.steps_per_year
    jobs = [(m, params, seed, rf, excess, lo, min(lo + chunk_size, n_paths))
            for lo in range(0, n_paths, chunk_size)]
    out = np.empty((n_paths, 3))
    if workers <= 1 or len(jobs) == 1:
        results = map(_chunk, jobs)
        for lo, block in results:
            out[lo:lo + len(block)] = block
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for lo, block in pool.map(_chunk, jobs):
                out[lo:lo + len(block)] = block
    return out


def tabulate(tstats: np.ndarray, thresholds=SIGNIFICANCE_THRESHOLDS, beta_threshold: float = 1.66,
             two_sided: bool = False, conditional: bool = False, settings: dict | None = None) -> ExperimentReport:
    """Count significance crossings.

    With ``conditional`` the alpha crossings are only counted among paths with
    a significant log-return beta.
    """
    excluded = np.isnan(tstats).any(axis=1)
    t = tstats[~excluded]
    t_l, t_n, t_b = t[:, 0], t[:, 1], t[:, 2]
    if two_sided:
        t_l, t_n, t_b = np.abs(t_l), np.abs(t_n), np.abs(t_b)
    sig = t_b > beta_threshold
    pool = sig if conditional else np.ones_like(sig)
    counts = {c: int(((t_l < c) & (t_n > c) & pool).sum()) for c in thresholds}
    n_sig = int(sig.sum())
    pct = sum(counts.values()) / n_sig if n_sig else float("nan")
    return ExperimentReport(
        n_paths=len(tstats),
        sig_beta_count=n_sig,
        inflation_counts=counts,
        inflation_percentage=pct,
        excluded_paths=int(excluded.sum()),
        settings=dict(settings or {}),
    )


def alpha_inflation_experiment(market_prices, params: GbmParams, rf_annual: float = 0.03,
                               n_paths: int = 10_000, seed: SeedSpec | None = None, *,
                               thresholds=SIGNIFICANCE_THRESHOLDS, two_sided: bool = False,
                               excess: bool = True, conditional: bool = False,
                               workers: int = 1) -> ExperimentReport:
    """Simulate GBM paths and compare alpha t-values from log and net returns.

    Each path is regressed on the market twice, once in log and once in net
    returns derived from the same prices. The market side is always the
    excess over ``rf_annual / steps_per_year``; the dependent side is too when
    ``excess`` is set.
    """
    if n_paths < 1:
        raise ValueError("n_paths must be at least 1")
    seed = seed or SeedSpec()
    tstats = simulate_tstats(market_prices, params, seed, n_paths, rf_annual, excess, workers)
    settings = {
        "drift": params.drift_annual, "vol": params.vol_annual, "horizon": params.horizon_periods,
        "rf": rf_annual, "seed": seed.master_seed, "paths": n_paths, "rng": RNG_NAME,
        "two_sided": two_sided, "excess": excess, "conditional": conditional,
    }
    return tabulate(tstats, thresholds, two_sided=two_sided, conditional=conditional, settings=settings)


@dataclass(frozen=True)
class Table3Panel:
    bhls: np.ndarray
    excess_log: np.ndarray
    comp_log: np.ndarray
    excess_net: np.ndarray
    comp_net: np.ndarray
    mean_log: float
    mean_net: float
    final_on_mean_log: float
    final_on_mean_net: float

    @property
    def bhls_terminal(self) -> float:
        return float(self.bhls[-1])


def riskfree_leg(start: float, rate: float, years: int) -> np.ndarray:
    """Value of ``start`` growing continuously at ``rate`` per year."""
    return start * np.exp(rate * np.arange(years + 1))


def table3_replay(risky, riskfree=None, rf_rate: float = 0.03) -> Table3Panel:
    """Excess, compounded and mean columns of a simulated BHLS panel.

    Without ``riskfree`` the risk-free leg is rebuilt from its continuous
    ``rf_rate`` rather than taken from a rounded printout.
    """
    risky = as_prices(risky).values
    start = float(risky[0])
    if riskfree is None:
        riskfree = riskfree_leg(start, rf_rate, len(risky) - 1)
    riskfree = as_prices(riskfree).values
    n = len(risky) - 1
    log = compound_on_excess(start, risky, riskfree, Convention.LOG)
    net = compound_on_excess(start, risky, riskfree, Convention.NET)
    return Table3Panel(
        bhls=risky - riskfree,
        excess_log=log.excess,
        comp_log=log.values,
        excess_net=net.excess,
        comp_net=net.values,
        mean_log=log.mean,
        mean_net=net.mean,
        final_on_mean_log=start * math.exp(n * log.mean),
        final_on_mean_net=start * (1.0 + net.mean) ** n,
    )
