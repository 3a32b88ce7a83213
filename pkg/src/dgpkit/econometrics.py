"""Time-series OLS and Sharpe ratios.

Standard errors are the classical homoskedastic ones, with residual variance
``sum(e**2) / (n - k - 1)`` for ``k`` slopes plus an intercept. Excess returns
are formed by the caller: :func:`ols` does not know about risk-free rates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateSeries, InsufficientData, ShapeError, SingularDesign
from .returns import Convention, ReturnSeries

# one-sided critical values used for significance markers
SIGNIFICANCE_THRESHOLDS = (1.66, 1.98, 2.62, 3.37)


@dataclass(frozen=True)
class FactorSeries:
    name: str
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))


@dataclass(frozen=True)
class RegressionFit:
    alpha: float
    betas: np.ndarray
    se_alpha: float
    se_betas: np.ndarray
    t_alpha: float
    t_betas: np.ndarray
    residuals: np.ndarray = field(repr=False)
    n_obs: int
    r_squared: float
    names: tuple[str, ...] = ()

    @property
    def beta(self) -> float:
        return float(self.betas[0])

    @property
    def t_beta(self) -> float:
        return float(self.t_betas[0])


@dataclass(frozen=True)
class SharpeResult:
    mean: float
    stdev: float
    sharpe: float
    convention: Convention
    rf_per_period: float


class SeriesStats(NamedTuple):
    mean: float
    stdev: float


def _values(series) -> np.ndarray:
    if isinstance(series, (ReturnSeries, FactorSeries)):
        return np.asarray(series.values, dtype=float)
    return np.asarray(series, dtype=float)


def _factor_matrix(factors, n: int) -> tuple[np.ndarray, tuple[str, ...]]:
    if isinstance(factors, (FactorSeries, ReturnSeries)):
        factors = [factors]
    elif isinstance(factors, np.ndarray) and factors.ndim == 2:
        factors = list(factors.T)
    elif isinstance(factors, (list, tuple, np.ndarray)) and all(isinstance(f, (int, float, np.number)) for f in factors):
        factors = [np.asarray(factors, dtype=float)]
    cols, names = [], []
    for i, f in enumerate(factors):
        v = _values(f)
        if v.ndim != 1 or len(v) != n:
            raise ShapeError(f"factor {i} has length {len(v)}, dependent has {n}")
        cols.append(v)
        names.append(f.name if isinstance(f, FactorSeries) else f"x{i + 1}")
    if not cols:
        raise ShapeError("at least one factor is required")
    return np.column_stack(cols), tuple(names)


def _t(est, se):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.divide(est, se)


def ols(dependent, factors: Sequence | FactorSeries, intercept: bool = True) -> RegressionFit:
    """Regress ``dependent`` on ``factors`` by ordinary least squares.

    With one factor and an intercept the slope is the textbook closed form
    ``sum((y - ybar)(x - xbar)) / sum((x - xbar)**2)`` and the intercept
    ``ybar - beta * xbar``. Otherwise the normal equations are solved through
    a least-squares factorisation after a rank check.
    """
    y = _values(dependent)
    n = len(y)
    X, names = _factor_matrix(factors, n)
    k = X.shape[1]
    p = k + int(intercept)
    if n <= p + 1:
        raise InsufficientData(f"{n} observations cannot support {p} coefficients")

    if intercept and k == 1:
        x = X[:, 0]
        xbar, ybar = x.mean(), y.mean()
        dx = x - xbar
        sxx = dx @ dx
        # constant up to rounding noise
        if not sxx > 0 or np.ptp(x) <= 1e-12 * np.abs(x).max():
            raise SingularDesign("factor has no variance")
        beta = (dx @ (y - ybar)) / sxx
        alpha = ybar - beta * xbar
        resid = y - alpha - beta * x
        s2 = (resid @ resid) / (n - p)
        se_beta = np.sqrt(s2 / sxx)
        se_alpha = np.sqrt(s2 * (1.0 / n + xbar**2 / sxx))
        coef = np.array([alpha, beta])
        se = np.array([se_alpha, se_beta])
    else:
        D = np.column_stack([np.ones(n), X]) if intercept else X
        if np.linalg.matrix_rank(D) < p:
            raise SingularDesign("design matrix is rank deficient (collinear or constant factors)")
        coef, *_ = np.linalg.lstsq(D, y, rcond=None)
        resid = y - D @ coef
        s2 = (resid @ resid) / (n - p)
        cov = s2 * np.linalg.inv(D.T @ D)
        se = np.sqrt(np.diag(cov))
        if not intercept:
            coef = np.concatenate([[0.0], coef])
            se = np.concatenate([[np.nan], se])

    t = _t(coef, se)
    dy = y - y.mean()
    sst = dy @ dy
    r2 = 1.0 - (resid @ resid) / sst if sst > 0 else float("nan")
    return RegressionFit(
        alpha=float(coef[0]),
        betas=coef[1:],
        se_alpha=float(se[0]),
        se_betas=se[1:],
        t_alpha=float(t[0]),
        t_betas=t[1:],
        residuals=resid,
        n_obs=n,
        r_squared=float(r2),
        names=names,
    )


def series_stats(series) -> SeriesStats:
    """Sample mean and sample (n - 1) standard deviation."""
    v = _values(series)
    if len(v) < 2:
        raise InsufficientData("need at least two observations for a standard deviation")
    return SeriesStats(float(v.mean()), float(v.std(ddof=1)))


def sharpe(series, rf_per_period: float = 0.0) -> SharpeResult:
    """Per-period Sharpe ratio ``(mean - rf) / sd`` with sample sd.

    ``rf_per_period`` is subtracted under whatever convention ``series`` uses;
    no conversion of the rate is attempted.
    """
    conv = series.convention if isinstance(series, ReturnSeries) else Convention.NET
    mean, sd = series_stats(series)
    v = _values(series)
    if sd == 0 or np.ptp(v) == 0:
        raise DegenerateSeries("Sharpe ratio undefined for a series with zero dispersion")
    return SharpeResult(mean, sd, (mean - rf_per_period) / sd, conv, rf_per_period)


def significance_stars(t: float, thresholds=SIGNIFICANCE_THRESHOLDS, two_sided: bool = False) -> str:
    """One star per threshold cleared by ``t`` (``|t|`` when two-sided)."""
    stat = abs(t) if two_sided else t
    return "*" * sum(stat > c for c in thresholds)
