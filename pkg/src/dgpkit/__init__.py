"""Return conventions, portfolio value processes, factor regressions and
the simulations built on them."""

from .econometrics import FactorSeries, RegressionFit, ols, series_stats, sharpe, significance_stars
from .errors import (
    DegenerateSeries,
    DgpError,
    DomainError,
    InsufficientData,
    ParseError,
    ReturnUndefined,
    ShapeError,
    SingularDesign,
    ZeroCostViolation,
)
from .ingest import IngestSpec, ingest, read_prices, read_rates
from .long_short import BhlsSeries, LegPair, bhls_from_legs, compound_on_excess, prls_stats, prop2_gap
from .reports import ReportDoc
from .returns import (
    Convention,
    PriceSeries,
    ReturnSeries,
    arithmetic_mean,
    compound_on_mean,
    convert,
    geometric_mean,
    returns_from_prices,
    summarize,
)
from .simulation import GbmParams, SeedSpec, alpha_inflation_experiment, gbm_path
from .value_process import RatePath, bh_terminal, mean_on_fixed_capital, pr_terminal_compounded, pr_terminal_flat

__version__ = "0.1.0"
