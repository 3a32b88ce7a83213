"""Report documents for each exhibit and their markdown/CSV/JSON rendering.

Rendering is byte-stable: cells are formatted with an explicit spec, JSON keys
keep insertion order and nothing time-dependent is emitted.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from . import econometrics as econ
from . import long_short as ls
from . import market_share as ms
from .errors import DegenerateSeries
from .fixtures import load_snapshot, load_table2, load_table3, load_table8
from .returns import Convention, PriceSeries, returns_from_prices, summarize
from .simulation import ExperimentReport, table3_replay
from .value_process import RatePath, mean_on_fixed_capital, pr_terminal_compounded, pr_terminal_flat

FORMATS = ("md", "csv", "json")


@dataclass(frozen=True)
class Row:
    label: str
    value: float | int | str | None
    note: str = ""
    fmt: str = ".4f"

    def text(self) -> str:
        if self.value is None:
            return "N/A"
        if isinstance(self.value, str):
            return self.value
        if isinstance(self.value, (int, np.integer)) and not isinstance(self.value, bool):
            return str(int(self.value))
        if isinstance(self.value, float) and not math.isfinite(self.value):
            return "N/A"
        return format(self.value, self.fmt)

    def json_value(self):
        if self.value is None or isinstance(self.value, str):
            return self.value
        if isinstance(self.value, (int, np.integer)):
            return int(self.value)
        if not math.isfinite(self.value):
            return None
        return float(self.text())


@dataclass
class ReportDoc:
    title: str
    rows: list[Row] = field(default_factory=list)

    def add(self, label: str, value, note: str = "", fmt: str = ".4f") -> None:
        self.rows.append(Row(label, value, note, fmt))

    def render(self, fmt: str = "md") -> str:
        if fmt == "md":
            return to_markdown(self)
        if fmt == "csv":
            return to_csv(self)
        if fmt == "json":
            return to_json(self)
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def to_markdown(doc: ReportDoc) -> str:
    lines = [f"# {doc.title}", "", "| Label | Value | Note |", "|---|---:|---|"]
    for r in doc.rows:
        lines.append(f"| {r.label} | {r.text()} | {r.note} |")
    return "\n".join(lines) + "\n"


def to_csv(doc: ReportDoc) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "value", "note"])
    for r in doc.rows:
        w.writerow([r.label, r.text(), r.note])
    return buf.getvalue()


def to_json(doc: ReportDoc) -> str:
    payload = {
        "title": doc.title,
        "rows": [{"label": r.label, "value": r.json_value(), "note": r.note} for r in doc.rows],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def format_percent(x: float, digits: int = 1) -> str:
    """Percent string rounded half away from zero, e.g. 0.05833 -> '5.8'."""
    q = Decimal(1).scaleb(-digits)
    d = (Decimal(repr(float(x))) * 100).quantize(q, rounding=ROUND_HALF_UP)
    if d == 0:
        d = abs(d)
    return f"{d}"


def _sharpe_or_none(series, rf):
    try:
        return econ.sharpe(series, rf).sharpe
    except DegenerateSeries:
        return None


def run_table1(prices: PriceSeries, rf_annual: float = 0.03, tbill: RatePath | None = None) -> ReportDoc:
    """Log-versus-net statistics and periodic-rebalancing ledgers of a price path."""
    n = prices.periods
    s0, sn = prices.first, prices.last
    rf_m = rf_annual / 12.0
    net = returns_from_prices(prices, Convention.NET)
    log = returns_from_prices(prices, Convention.LOG)
    summ = summarize(prices)
    ybar, mubar = summ.geometric_mean_log, summ.arithmetic_mean_net
    const = RatePath.constant(rf_annual, n)
    flat = pr_terminal_flat(s0, mubar, n)

    doc = ReportDoc("Buy-and-hold versus periodic-rebalancing")
    doc.add("Number of periods (N)", n)
    doc.add("S_0", s0, "first close", ".2f")
    doc.add("S_N", sn, "last close", ".2f")
    doc.add("Geometric mean (log)", ybar, "mean of log returns", ".3e")
    doc.add("Standard deviation (log)", summ.stdev_log, "sample", ".3e")
    doc.add("Sharpe ratio (log)", _sharpe_or_none(log, rf_m), f"rf {rf_m:.4%} per period", ".4e")
    doc.add("S_0 exp(N ybar)", s0 * math.exp(n * ybar), "equals S_N", ".2f")
    doc.add("Arithmetic mean (net)", mubar, "mean of net returns", ".3e")
    doc.add("Standard deviation (net)", summ.stdev_net, "sample", ".3e")
    doc.add("Sharpe ratio (net)", _sharpe_or_none(net, rf_m), f"rf {rf_m:.4%} per period", ".4e")
    doc.add("S_0 (1 + mubar)^N", s0 * (1 + mubar) ** n, "compounded arithmetic mean", ".2f")
    doc.add("Sum of P&L: S_0 mubar N", flat.pnl_sum, "periodic rebalancing", ".2f")
    doc.add("Final value: S_0 (1 + mubar N)", flat.final, "periodic rebalancing", ".2f")
    doc.add("Sum S_0 mu_t compounded (rf)", pr_terminal_compounded(s0, net, const).cash_compounded,
            f"constant {rf_annual:.2%} per year", ".2f")
    if tbill is not None:
        doc.add("Sum S_0 mu_t compounded (T-bill)", pr_terminal_compounded(s0, net, tbill).cash_compounded,
                "supplied rate path", ".2f")
    doc.add("Sum S_0 mubar compounded (rf)", mean_on_fixed_capital(s0, mubar, n, const),
            f"constant {rf_annual:.2%} per year", ".2f")
    if tbill is not None:
        doc.add("Sum S_0 mubar compounded (T-bill)", mean_on_fixed_capital(s0, mubar, n, tbill),
                "supplied rate path", ".2f")
    return doc


def pathological_stats(up, down, rf_month: float = 0.0025) -> dict:
    """Means, SDs, Sharpes and alpha t-values for the Up/Down pair.

    Alpha comes from regressing Down on Up, both in excess of ``rf_month``.
    """
    out = {}
    for conv in (Convention.NET, Convention.LOG):
        ru = returns_from_prices(up, conv)
        rd = returns_from_prices(down, conv)
        for name, r in (("up", ru), ("down", rd)):
            s = econ.sharpe(r, rf_month)
            out[(conv.value, name)] = {"mean": s.mean, "sd": s.stdev, "sharpe": s.sharpe}
        fit = econ.ols(rd.values - rf_month, ru.values - rf_month)
        out[(conv.value, "down")]["t_alpha"] = fit.t_alpha
        out[(conv.value, "down")]["alpha"] = fit.alpha
    return out


def run_pathological(up=None, down=None, rf_month: float = 0.0025) -> ReportDoc:
    if up is None or down is None:
        up, down = load_table8()
    stats = pathological_stats(up, down, rf_month)
    doc = ReportDoc("Two monthly price series: net versus log performance measures")
    for conv in ("net", "log"):
        for name in ("up", "down"):
            s = stats[(conv, name)]
            tag = f"{name.capitalize()} ({conv})"
            doc.add(f"{tag} mean", s["mean"], "", ".3f")
            doc.add(f"{tag} SD", s["sd"], "sample", ".3f")
            doc.add(f"{tag} Sharpe", s["sharpe"], f"rf {rf_month:.2%} per month", ".3f")
        t = stats[(conv, "down")]["t_alpha"]
        doc.add(f"Down on Up alpha t-value ({conv})", t, econ.significance_stars(t) or "not significant", ".2f")
    return doc


def figure1_svg(up, down, width: int = 720, height: int = 360, pad: int = 40) -> str:
    """Static line chart of both price series."""
    up = np.asarray(up, dtype=float)
    down = np.asarray(down, dtype=float)
    lo = min(up.min(), down.min())
    hi = max(up.max(), down.max())
    n = max(len(up), len(down)) - 1

    def points(v):
        xs = pad + (width - 2 * pad) * np.arange(len(v)) / n
        ys = height - pad - (height - 2 * pad) * (v - lo) / (hi - lo)
        return " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" data-ymin="{lo:.2f}" data-ymax="{hi:.2f}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{pad - 4}" y="{height - pad}" text-anchor="end" font-size="10">{lo:.2f}</text>',
        f'<text x="{pad - 4}" y="{pad + 4}" text-anchor="end" font-size="10">{hi:.2f}</text>',
        f'<polyline id="up" fill="none" stroke="#1f77b4" stroke-width="1.5" points="{points(up)}"/>',
        f'<polyline id="down" fill="none" stroke="#d62728" stroke-width="1.5" points="{points(down)}"/>',
        f'<text x="{width - pad}" y="{pad}" text-anchor="end" font-size="12" fill="#1f77b4">Up</text>',
        f'<text x="{width - pad}" y="{pad + 14}" text-anchor="end" font-size="12" fill="#d62728">Down</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def run_table2(directory=None) -> ReportDoc:
    fx = load_table2(directory)
    doc = ReportDoc("Long, short and buy-and-hold long-short over two periods")
    for panel in ("A", "B", "C"):
        lv = [fx[(panel, "Long")][k] for k in ("v0", "v1", "v2")]
        sv = [fx[(panel, "Short")][k] for k in ("v0", "v1", "v2")]
        bh = ls.bhls_from_legs(lv, sv)
        doc.add(f"{panel} BHLS value", " ".join(f"{v:g}" for v in bh.values))
        for leg, series in (("Long", lv), ("Short", sv)):
            for conv in (Convention.NET, Convention.LOG):
                r = returns_from_prices(series, conv).values
                cells = " ".join(format_percent(x) for x in r)
                doc.add(f"{panel} {leg} {conv.value} returns (%)", cells)
                doc.add(f"{panel} {leg} {conv.value} mean (%)", format_percent(r.mean()))
        for conv in (Convention.NET, Convention.LOG):
            d = ls.leg_return_differences(lv, sv, conv)
            doc.add(f"{panel} BHLS {conv.value} returns (%)", " ".join(format_percent(x) for x in d),
                    "leg differences")
            doc.add(f"{panel} BHLS {conv.value} mean (%)", format_percent(d.mean()), "simple average")
    return doc


def run_table3(directory=None, rf_rate: float = 0.03) -> ReportDoc:
    doc = ReportDoc("Simulated buy-and-hold long-short portfolios")
    for panel in ("a", "b"):
        fx = load_table3(panel, directory)
        rep = table3_replay(fx.risky, rf_rate=rf_rate)
        P = panel.upper()
        for t in range(1, len(fx.risky)):
            doc.add(f"{P} year {t} BHLS", float(rep.bhls[t]), "", ".2f")
            doc.add(f"{P} year {t} excess log", float(rep.excess_log[t - 1]), "", ".4f")
            doc.add(f"{P} year {t} comp log", float(rep.comp_log[t]), "", ".2f")
            doc.add(f"{P} year {t} excess net", float(rep.excess_net[t - 1]), "", ".4f")
            doc.add(f"{P} year {t} comp net", float(rep.comp_net[t]), "", ".2f")
        doc.add(f"{P} mean excess log", rep.mean_log, "", ".4f")
        doc.add(f"{P} mean excess net", rep.mean_net, "", ".4f")
        doc.add(f"{P} final on mean (log)", rep.final_on_mean_log, "", ".2f")
        doc.add(f"{P} final on mean (net)", rep.final_on_mean_net, "", ".2f")
    return doc


def run_prop2(ybar: float = 0.10, r: float = 0.03, n: int = 20, base: float = 100.0) -> ReportDoc:
    g = ls.prop2_gap(ybar, r, n, base)
    gn = ls.prop2_gap_net(ybar, r, n, base)
    gd = ls.prop2_gap_discrete(ybar, r, 30, 365)
    doc = ReportDoc("Market-minus-Treasury versus compounded excess")
    doc.add("Market value", base * math.exp(n * ybar), f"{base:g} at {ybar:.2%} for {n} years", ".2f")
    doc.add("Treasury value", base * math.exp(n * r), f"{base:g} at {r:.2%} for {n} years", ".2f")
    doc.add("MmTb", g.mmtb, "difference held separately", ".2f")
    doc.add("Excess-market value", base + g.xmfv, "compounded log excess", ".2f")
    doc.add("XmFv", g.xmfv, "", ".2f")
    doc.add("Underestimate (%)", format_percent(g.underestimate_frac), "(MmTb - XmFv) / MmTb")
    doc.add("Excess-market value (net)", base + gn.xmfv, "compounded net excess", ".2f")
    doc.add("Underestimate with net excess (%)", format_percent(gn.underestimate_frac))
    doc.add("One month of daily compounding, underestimate (%)", format_percent(gd.underestimate_frac, 2),
            "30 days of 365ths")
    doc.add("Raising both rates by 0.02 widens the gap", str(ls.corollary1_check(ybar, r, 0.02, n)))
    return doc


def run_market_share(directory=None) -> ReportDoc:
    s26 = load_snapshot("1926", directory)
    s20 = load_snapshot("2020", directory)
    s32 = load_snapshot("1932", directory)
    doc = ReportDoc("Size and value factor capital against the market")
    for snap, names in ((s26, ("Small", "High", "S/L")), (s20, ("Small", "High", "S/H"))):
        for name in names:
            doc.add(f"{snap.label} {name} share (%)", 100 * ms.share_of_market(snap, name), "", ".1f")
    cap = ms.common_capital(s26)
    doc.add("1926 common capital ($ million)", cap / 1e6, "half of the smallest corner portfolio", ".1f")
    f26 = ms.factor_capital_share(s26, s26, cap)
    f20 = ms.factor_capital_share(s26, s20, cap)
    doc.add("1926 SMB share (%)", 100 * f26.smb_share, "six portfolios", ".1f")
    doc.add("1926 HML share (%)", 100 * f26.hml_share, "four portfolios", ".1f")
    doc.add("2020 SMB + HML share (%)", 100 * f20.combined_share, "1926 capital held fixed", ".4f")
    doc.add("1926 / 2020 market cap (%)", 100 * ms.market_ratio(s26, s20), "", ".3f")
    doc.add("1932 / 1926 S/L size (%)", 100 * ms.survival_ratio(s32, s26), "", ".1f")
    doc.add("1926 equal-weight share (%)", 100 * ms.equal_weight_share(s26), "smallest firm x firms", ".3f")
    return doc


def run_mc_report(cells: list[tuple[str, ExperimentReport]]) -> ReportDoc:
    doc = ReportDoc("Alpha inflation under simulated GBM paths")
    for name, rep in cells:
        doc.add(f"{name} paths", rep.n_paths)
        doc.add(f"{name} t_L(beta) > 1.66", rep.sig_beta_count)
        for c, k in rep.inflation_counts.items():
            doc.add(f"{name} t_L < {c} & t_N > {c}", k)
        doc.add(f"{name} percentage (%)", 100 * rep.inflation_percentage, "summed counts / significant betas", ".1f")
        if rep.excluded_paths:
            doc.add(f"{name} excluded paths", rep.excluded_paths, "singular design")
    if cells:
        s = cells[0][1].settings
        doc.add("seed", str(s.get("seed")), s.get("rng", ""))
    return doc
