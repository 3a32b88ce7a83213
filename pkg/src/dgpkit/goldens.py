"""Recompute every tabulated exhibit and compare with the printed values.

Each check records the table, the cell, the printed value, what we computed
and the tolerance. Tables 2, 3 and 8 are read from the fixture files, so a
perturbed fixture shows up as a failing cell. Table 1 rows that need the full
index history are not covered here. Only the closed forms on its printed
scalars are.
"""

from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from . import long_short as ls
from . import market_share as ms
from .fixtures import load_snapshot, load_table2, load_table3, load_table8
from .reports import format_percent, pathological_stats
from .returns import Convention, compound_on_mean, returns_from_prices
from .simulation import table3_replay
from .value_process import RatePath, mean_on_fixed_capital, pr_terminal_flat

TABLE9 = {
    ("net", "up"): {"mean": 0.011, "sd": 0.069, "sharpe": 0.119},
    ("net", "down"): {"mean": 0.061, "sd": 0.308, "sharpe": 0.188, "t_alpha": 1.70},
    ("log", "up"): {"mean": 0.008, "sd": 0.070, "sharpe": 0.081},
    ("log", "down"): {"mean": -0.005, "sd": 0.446, "sharpe": -0.018, "t_alpha": -0.46},
}
TABLE9_TOL = {"mean": 0.001, "sd": 0.001, "sharpe": 0.005, "t_alpha": 0.05}

# printed Table 1 scalars
T1_S0, T1_SN, T1_N = 55.61, 3225.52, 720
T1_YBAR, T1_SD_LOG, T1_MUBAR, T1_SD_NET = 5.640e-3, 4.224e-2, 6.543e-3, 4.196e-2

# printed Table 7 counts: (sig beta, crossings at 1.66/1.98/2.62/3.37, percentage)
TABLE7 = {
    "A 8%": (80, (17, 11, 5, 0), 41.3),
    "A 16%": (413, (22, 25, 29, 14), 21.8),
    "B 8%": (173, (38, 27, 16, 3), 48.6),
    "B 16%": (423, (32, 36, 40, 26), 31.7),
}


@dataclass(frozen=True)
class GoldenCheck:
    table: str
    cell: str
    expected: float
    actual: float
    tol: float

    @property
    def deviation(self) -> float:
        return abs(self.actual - self.expected)

    @property
    def passed(self) -> bool:
        return bool(self.deviation <= self.tol)


@dataclass(frozen=True)
class GoldenRun:
    checks: tuple[GoldenCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[GoldenCheck]:
        return [c for c in self.checks if not c.passed]

    def max_deviation(self) -> "OrderedDict[str, tuple[float, int]]":
        """Largest deviation and number of checks for each table."""
        out: OrderedDict[str, tuple[float, int]] = OrderedDict()
        for c in self.checks:
            dev, n = out.get(c.table, (0.0, 0))
            out[c.table] = (max(dev, c.deviation), n + 1)
        return out

    def report(self) -> str:
        lines = []
        for table, (dev, n) in self.max_deviation().items():
            bad = sum(1 for c in self.checks if c.table == table and not c.passed)
            status = "ok" if bad == 0 else f"{bad} FAILED"
            lines.append(f"{table}: {n} checks, max deviation {dev:.3g}, {status}")
        for c in self.failures:
            lines.append(f"MISMATCH {c.table} / {c.cell}: expected {c.expected:g}, got {c.actual:.6g} "
                         f"(|diff| {c.deviation:.3g} > tol {c.tol:g})")
        lines.append("all goldens match" if self.ok else f"{len(self.failures)} golden mismatch(es)")
        return "\n".join(lines) + "\n"


class _Collector:
    def __init__(self):
        self.checks: list[GoldenCheck] = []

    def __call__(self, table, cell, expected, actual, tol):
        self.checks.append(GoldenCheck(table, cell, float(expected), float(actual), float(tol)))

    def truth(self, table, cell, condition: bool):
        self(table, cell, 1.0, 1.0 if condition else 0.0, 0.0)


def _table2(check, directory):
    fx = load_table2(directory)
    tol = 0.05  # percentage points
    for panel in ("A", "B", "C"):
        long, short, bh = fx[(panel, "Long")], fx[(panel, "Short")], fx[(panel, "BHLS")]
        lv = [long[k] for k in ("v0", "v1", "v2")]
        sv = [short[k] for k in ("v0", "v1", "v2")]
        computed = {"Long": {}, "Short": {}, "BHLS": {}}
        for conv in (Convention.NET, Convention.LOG):
            rl = returns_from_prices(lv, conv).values
            rs = returns_from_prices(sv, conv).values
            for leg, r in (("Long", rl), ("Short", rs), ("BHLS", rl - rs)):
                computed[leg][conv.value] = r
        for leg, printed in (("Long", long), ("Short", short), ("BHLS", bh)):
            for conv in ("net", "log"):
                r = computed[leg][conv]
                check("Table 2", f"{panel} {leg} {conv} period 1", printed[f"{conv}1"], 100 * r[0], tol)
                check("Table 2", f"{panel} {leg} {conv} period 2", printed[f"{conv}2"], 100 * r[1], tol)
                check("Table 2", f"{panel} {leg} {conv} mean", printed[f"{conv}_mean"], 100 * r.mean(), tol)
        value = ls.bhls_from_legs(lv, sv).values
        for t in range(3):
            check("Table 2", f"{panel} BHLS value {t}", bh[f"v{t}"], value[t], 0.0)


def _table3(check, directory):
    for panel in ("a", "b"):
        fx = load_table3(panel, directory)
        rep = table3_replay(fx.risky)
        P = panel.upper()
        check("Table 3", f"{P} risk-free leg vs 3% continuous (max)", 0.0,
              np.abs(fx.riskfree - 50.0 * np.exp(0.03 * np.arange(len(fx.risky)))).max(), 0.005)
        for t in range(1, len(fx.risky)):
            check("Table 3", f"{P} year {t} BHLS", fx.bhls[t], rep.bhls[t], 0.01)
            check("Table 3", f"{P} year {t} excess log", fx.excess_log[t - 1], rep.excess_log[t - 1], 0.01)
            check("Table 3", f"{P} year {t} comp log", fx.comp_log[t], rep.comp_log[t], 0.01)
            check("Table 3", f"{P} year {t} excess net", fx.excess_net[t - 1], rep.excess_net[t - 1], 0.01)
            check("Table 3", f"{P} year {t} comp net", fx.comp_net[t], rep.comp_net[t], 0.01)
        check("Table 3", f"{P} mean excess log", fx.mean_log, rep.mean_log, 0.0005)
        check("Table 3", f"{P} mean excess net", fx.mean_net, rep.mean_net, 0.0005)
        check("Table 3", f"{P} final on mean log", fx.final_mean_log, rep.final_on_mean_log, 0.01)
        check("Table 3", f"{P} final on mean net", fx.final_mean_net, rep.final_on_mean_net, 0.01)
        if panel == "a":
            check("Table 3", "A final on mean log equals path final (2 dp)",
                  round(rep.comp_log[-1], 2), round(rep.final_on_mean_log, 2), 0.0)
        else:
            check.truth("Table 3", "B BHLS terminal negative while comp log positive",
                        rep.bhls_terminal < 0 < rep.comp_log[-1])


def _table9(check, directory):
    up, down = load_table8(directory)
    stats = pathological_stats(up, down, 0.0025)
    for key, printed in TABLE9.items():
        for stat, value in printed.items():
            check("Table 9", f"{key[1]} {key[0]} {stat}", value, stats[key][stat], TABLE9_TOL[stat])
    check.truth("Table 9", "net Sharpe Down > Up", stats[("net", "down")]["sharpe"] > stats[("net", "up")]["sharpe"])
    check.truth("Table 9", "log Sharpe Down < 0 < Up",
                stats[("log", "down")]["sharpe"] < 0 < stats[("log", "up")]["sharpe"])


def _prop2(check):
    g = ls.prop2_gap(0.10, 0.03, 20, 100)
    check("Compounding gap", "market value", 739, 100 * math.exp(2.0), 1)
    check("Compounding gap", "treasury value", 182, 100 * math.exp(0.6), 1)
    check("Compounding gap", "MmTb", 557, g.mmtb, 1)
    check("Compounding gap", "excess value", 406, 100 + g.xmfv, 1)
    check("Compounding gap", "XmFv", 306, g.xmfv, 1)
    check("Compounding gap", "underestimate", 0.45, g.underestimate_frac, 0.005)
    gn = ls.prop2_gap_net(0.10, 0.03, 20, 100)
    check("Compounding gap", "net excess rate", 0.07472, math.exp(0.10) - math.exp(0.03), 5e-6)
    check("Compounding gap", "net excess value", 423, 100 + gn.xmfv, 1)
    check("Compounding gap", "net underestimate", 0.42, gn.underestimate_frac, 0.005)
    gd = ls.prop2_gap_discrete(0.10, 0.03, 30, 365)
    check("Compounding gap", "monthly daily-compounding underestimate", 0.0025, gd.underestimate_frac, 0.0003)


def _market_share(check, directory):
    s26, s20, s32 = (load_snapshot(y, directory) for y in ("1926", "2020", "1932"))
    pp = 0.001
    for snap, name, printed in ((s26, "Small", 0.057), (s26, "High", 0.075), (s26, "S/L", 0.014),
                                (s20, "Small", 0.033), (s20, "High", 0.079), (s20, "S/H", 0.009)):
        check("Factor capital", f"{snap.label} {name} share", printed, ms.share_of_market(snap, name), pp)
    cap = ms.common_capital(s26)
    check("Factor capital", "1926 common capital ($M)", 172, cap / 1e6, 0.5)
    f26 = ms.factor_capital_share(s26, s26, cap)
    f20 = ms.factor_capital_share(s26, s20, cap)
    check("Factor capital", "1926 SMB share", 0.042, f26.smb_share, pp)
    check("Factor capital", "1926 HML share", 0.028, f26.hml_share, pp)
    check("Factor capital", "2020 SMB+HML share", 0.000047, f20.combined_share, 5e-7)
    check("Factor capital", "1926/2020 market cap", 0.00067, ms.market_ratio(s26, s20), 5e-6)
    check.truth("Factor capital", "1926/2020 market cap < 0.07%", ms.market_ratio(s26, s20) < 0.0007)
    check.truth("Factor capital", "1932/1926 S/L < 14%", ms.survival_ratio(s32, s26) < 0.14)
    check("Factor capital", "1926 equal-weight share", 0.0007, ms.equal_weight_share(s26), 5e-5)


def _table1_closed_form(check):
    flat = pr_terminal_flat(T1_S0, T1_MUBAR, T1_N)
    check("Table 1 (closed form)", "sum of P&L", 261.99, flat.pnl_sum, 0.05)
    check("Table 1 (closed form)", "final value flat", 317.60, flat.final, 0.05)
    annuity = mean_on_fixed_capital(T1_S0, T1_MUBAR, T1_N, RatePath.constant(0.03, T1_N))
    check("Table 1 (closed form)", "mubar compounded (rf)", 733.01, annuity, 0.005 * 733.01)
    check("Table 1 (closed form)", "S0 exp(N ybar)", T1_SN, compound_on_mean(T1_S0, T1_YBAR, T1_N, "log"),
          0.005 * T1_SN)
    check("Table 1 (closed form)", "S0 (1+mubar)^N", 6089.20, compound_on_mean(T1_S0, T1_MUBAR, T1_N, "net"),
          0.005 * 6089.20)
    check("Table 1 (closed form)", "Sharpe log", 0.0744, (T1_YBAR - 0.0025) / T1_SD_LOG, 0.002)
    check("Table 1 (closed form)", "Sharpe net", 0.09636, (T1_MUBAR - 0.0025) / T1_SD_NET, 0.002)


def _table7_arithmetic(check):
    for cell, (sig, counts, pct) in TABLE7.items():
        printed_as = float(format_percent(sum(counts) / sig))
        check("Table 7 (printed counts)", f"{cell} percentage", pct, printed_as, 1e-9)


def run_all_goldens(directory=None) -> GoldenRun:
    check = _Collector()
    _table1_closed_form(check)
    _table2(check, directory)
    _table3(check, directory)
    _prop2(check)
    _market_share(check, directory)
    _table7_arithmetic(check)
    _table9(check, directory)
    return GoldenRun(tuple(check.checks))
