"""Loaders for the tabulated data shipped under ``dgpkit/fixtures``.

Every loader takes an optional ``directory`` so a modified copy of the
fixtures can be checked against the same expectations.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .market_share import MarketSnapshot, read_snapshot

# money unit of each snapshot table, in dollars
SNAPSHOTS = {
    "1926": ("table4_1926.csv", 1_000.0),
    "1932": ("table6_1932.csv", 1_000.0),
    "2020": ("table5_2020.csv", 1_000_000.0),
}


def fixtures_dir(directory=None) -> Path:
    if directory is not None:
        return Path(directory)
    return Path(str(resources.files("dgpkit") / "fixtures"))


def _rows(name: str, directory=None) -> list[dict]:
    with open(fixtures_dir(directory) / name, newline="") as fh:
        return list(csv.DictReader(fh))


def _num(s: str) -> float:
    return float(s) if s.strip() else float("nan")


@dataclass(frozen=True)
class Table3Fixture:
    """One panel of simulated risky and risk-free paths with printed columns."""

    risky: np.ndarray
    riskfree: np.ndarray
    bhls: np.ndarray
    excess_log: np.ndarray
    comp_log: np.ndarray
    excess_net: np.ndarray
    comp_net: np.ndarray
    mean_log: float
    mean_net: float
    final_mean_log: float
    final_mean_net: float


def load_table2(directory=None) -> dict:
    """``{(panel, leg): row}`` with values and printed percent returns."""
    out = {}
    for row in _rows("table2.csv", directory):
        key = (row.pop("panel"), row.pop("leg"))
        out[key] = {k: float(v) for k, v in row.items()}
    return out


def load_table3(panel: str, directory=None) -> Table3Fixture:
    panel = panel.lower()
    rows = _rows(f"table3_panel_{panel}.csv", directory)
    col = {k: np.array([_num(r[k]) for r in rows]) for k in rows[0] if k != "year"}
    summary = next(r for r in _rows("table3_summary.csv", directory) if r["panel"] == panel)
    return Table3Fixture(
        risky=col["risky"], riskfree=col["riskfree"], bhls=col["bhls"],
        excess_log=col["excess_log"][1:], comp_log=col["comp_log"],
        excess_net=col["excess_net"][1:], comp_net=col["comp_net"],
        mean_log=float(summary["mean_log"]), mean_net=float(summary["mean_net"]),
        final_mean_log=float(summary["final_mean_log"]), final_mean_net=float(summary["final_mean_net"]),
    )


def load_table8(directory=None) -> tuple[np.ndarray, np.ndarray]:
    """Up and Down monthly price series, month 0 to 120."""
    rows = _rows("table8.csv", directory)
    up = np.array([float(r["up"]) for r in rows])
    down = np.array([float(r["down"]) for r in rows])
    return up, down


def load_snapshot(year: str, directory=None) -> MarketSnapshot:
    name, unit = SNAPSHOTS[str(year)]
    return read_snapshot(fixtures_dir(directory) / name, label=str(year), unit=unit)
