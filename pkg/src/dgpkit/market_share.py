"""Capital arithmetic behind the size and value factors.

Every portfolio that enters SMB (six of them) or HML (four) must carry the same
capital each month. Taking half of the smallest of S/L, S/H, B/L and B/H as
that common capital, SMB deploys six times it and HML four times it.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from os import PathLike
from typing import NamedTuple

from .errors import DomainError

CORNER_PORTFOLIOS = ("S/L", "S/H", "B/L", "B/H")
SMB_PORTFOLIOS = 6
HML_PORTFOLIOS = 4


@dataclass(frozen=True)
class MarketSnapshot:
    """Market and portfolio capitalisations at one date, in dollars."""

    label: str
    market_cap: float
    portfolio_caps: dict
    firm_counts: dict = field(default_factory=dict)
    min_sizes: dict = field(default_factory=dict)
    max_sizes: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.market_cap > 0:
            raise DomainError("market cap must be positive")
        for name, cap in self.portfolio_caps.items():
            if not 0 < cap <= self.market_cap * (1 + 1e-9):
                raise DomainError(f"{name} cap {cap} outside (0, market cap]")
        if "Small" in self.portfolio_caps and "Big" in self.portfolio_caps:
            total = self.portfolio_caps["Small"] + self.portfolio_caps["Big"]
            # source tables round each cell to the unit they print
            if abs(total - self.market_cap) > 1e-6 * self.market_cap:
                raise DomainError(f"Small + Big = {total} does not match market cap {self.market_cap}")

    def cap(self, portfolio: str) -> float:
        if portfolio == "Market":
            return self.market_cap
        return self.portfolio_caps[portfolio]


class FactorCapital(NamedTuple):
    capital: float
    smb_capital: float
    hml_capital: float
    smb_share: float
    hml_share: float
    combined_share: float


def read_snapshot(source, label: str, unit: float = 1.0) -> MarketSnapshot:
    """Load a snapshot from CSV with header ``name,firms,min,max,cap``.

    ``unit`` converts the file's money columns to dollars (1000 for a table in
    thousands). ``source`` is a path or an open text stream.
    """
    if isinstance(source, (str, PathLike)):
        with open(source, newline="") as fh:
            text = fh.read()
    else:
        text = source.read()
    reader = csv.DictReader(io.StringIO(text))
    missing = {"name", "firms", "min", "max", "cap"} - set(reader.fieldnames or ())
    if missing:
        raise DomainError(f"snapshot CSV missing columns: {sorted(missing)}")
    caps, firms, mins, maxs = {}, {}, {}, {}
    market = None
    for row in reader:
        name = row["name"].strip()
        cap = float(row["cap"].replace(",", "")) * unit
        firms[name] = int(row["firms"].replace(",", ""))
        mins[name] = float(row["min"].replace(",", "")) * unit
        maxs[name] = float(row["max"].replace(",", "")) * unit
        if name == "Market":
            market = cap
        else:
            caps[name] = cap
    if market is None:
        raise DomainError("snapshot CSV has no Market row")
    return MarketSnapshot(label, market, caps, firms, mins, maxs)


def share_of_market(snapshot: MarketSnapshot, portfolio: str) -> float:
    return snapshot.cap(portfolio) / snapshot.market_cap


def common_capital(snapshot: MarketSnapshot) -> float:
    """Half the smallest corner portfolio (S/L, S/H, B/L, B/H)."""
    missing = [p for p in CORNER_PORTFOLIOS if p not in snapshot.portfolio_caps]
    if missing:
        raise KeyError(f"snapshot {snapshot.label} lacks {', '.join(missing)}")
    return min(snapshot.portfolio_caps[p] for p in CORNER_PORTFOLIOS) / 2.0


def factor_capital_share(snapshot: MarketSnapshot, reference: MarketSnapshot,
                         capital: float | None = None) -> FactorCapital:
    """SMB and HML capital as shares of ``reference``'s market.

    ``capital`` defaults to the common capital of ``snapshot``.
    """
    if capital is None:
        capital = common_capital(snapshot)
    if not capital > 0:
        raise DomainError("capital must be positive")
    smb = SMB_PORTFOLIOS * capital
    hml = HML_PORTFOLIOS * capital
    m = reference.market_cap
    return FactorCapital(capital, smb, hml, smb / m, hml / m, (smb + hml) / m)


def market_ratio(numerator: MarketSnapshot, denominator: MarketSnapshot) -> float:
    return numerator.market_cap / denominator.market_cap


def survival_ratio(later: MarketSnapshot, earlier: MarketSnapshot, portfolio: str = "S/L") -> float:
    return later.cap(portfolio) / earlier.cap(portfolio)


def equal_weight_share(snapshot: MarketSnapshot) -> float:
    """Smallest firm size times firm count, over market cap.

    The largest equal-weighted holding of every firm that the smallest firm
    can support.
    """
    size = snapshot.min_sizes["Market"] * snapshot.firm_counts["Market"]
    return size / snapshot.market_cap
