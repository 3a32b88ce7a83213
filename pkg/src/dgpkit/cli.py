"""Command-line entry point: one subcommand per reproduced exhibit.

Exit codes: 0 success, 1 golden mismatch, 2 input error, 3 numerical
degeneracy.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from pathlib import Path

from . import reports
from .econometrics import series_stats
from .errors import DegenerateSeries, DgpError, SingularDesign
from .fixtures import load_table8
from .goldens import run_all_goldens
from .ingest import read_prices, read_rates
from .returns import Convention, returns_from_prices
from .simulation import DECADES, GbmParams, SeedSpec, alpha_inflation_experiment, decade_market
from .value_process import RatePath

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2, 3

MC_KEYS = {"drift": float, "vol": float, "paths": int, "seed": int, "horizon": int, "rf": float,
           "market-csv": str}


class InputError(DgpError, ValueError):
    """Bad command-line configuration."""


def read_mc_config(path) -> dict:
    """Flat ``key = value`` file. Unknown keys are rejected."""
    parser = configparser.ConfigParser()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read config ({exc.strerror})") from exc
    try:
        parser.read_string("[mc]\n" + text, source=str(path))
    except configparser.Error as exc:
        raise InputError(f"{path}: {exc}") from exc
    out = {}
    for key, raw in parser["mc"].items():
        if key not in MC_KEYS:
            raise InputError(f"{path}: unknown key {key!r} (allowed: {', '.join(MC_KEYS)})")
        try:
            out[key] = MC_KEYS[key](raw)
        except ValueError:
            raise InputError(f"{path}: bad value for {key}: {raw!r}") from None
    return out


def market_volatility(market, horizon: int, periods_per_year: int = 12) -> float:
    """Annualized sample SD of the market's monthly net returns over the horizon."""
    net = returns_from_prices(market.values[: horizon + 1], Convention.NET)
    return series_stats(net).stdev * periods_per_year ** 0.5


def align_rates(rates: RatePath, prices) -> RatePath:
    """Keep the rates dated inside ``[first price date, last price date)``.

    A rate file covering the same months as the price file then supplies one
    rate per return period.
    """
    if not rates.dates or not prices.dates:
        return rates
    lo, hi = prices.dates[0], prices.dates[-1]
    keep = [i for i, d in enumerate(rates.dates) if lo <= d < hi]
    return RatePath(rates.rates[keep], tuple(rates.dates[i] for i in keep))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_plot(path: str, up, down) -> None:
    Path(path).write_text(reports.figure1_svg(up, down))


def cmd_analyze(args) -> int:
    prices = read_prices(args.prices, date_format=args.date_format)
    tbill = read_rates(args.tbill, date_format=args.date_format) if args.tbill else None
    if tbill is not None:
        tbill = align_rates(tbill, prices)
    _emit(reports.run_table1(prices, args.rf, tbill).render(args.format), args.out)
    return EXIT_OK


def cmd_bhls_demo(args) -> int:
    _emit(reports.run_table2(args.fixtures_dir).render(args.format), args.out)
    return EXIT_OK


def cmd_replay_table3(args) -> int:
    _emit(reports.run_table3(args.fixtures_dir, args.rf).render(args.format), args.out)
    return EXIT_OK


def cmd_pathological(args) -> int:
    up, down = load_table8(args.fixtures_dir)
    _emit(reports.run_pathological(up, down, args.rf / 12).render(args.format), args.out)
    if args.plot:
        _write_plot(args.plot, up, down)
    return EXIT_OK


def cmd_prop2(args) -> int:
    doc = reports.run_prop2(args.ybar, args.rf, args.years, args.base)
    _emit(doc.render(args.format), args.out)
    return EXIT_OK


def cmd_market_share(args) -> int:
    _emit(reports.run_market_share(args.fixtures_dir).render(args.format), args.out)
    return EXIT_OK


def cmd_mc_alpha(args) -> int:
    cfg = read_mc_config(args.config) if args.config else {}
    paths = args.paths if args.paths is not None else cfg.get("paths", 10_000)
    seed = args.seed if args.seed is not None else cfg.get("seed", SeedSpec().master_seed)
    rf = args.rf if args.rf_given else cfg.get("rf", args.rf)
    horizon = cfg.get("horizon", 120)
    market_csv = args.market_csv or cfg.get("market-csv")
    drifts = [args.drift] if args.drift is not None else (
        [cfg["drift"]] if "drift" in cfg else [0.08, 0.16])
    vol = args.vol if args.vol is not None else cfg.get("vol")

    if market_csv:
        market = read_prices(market_csv, date_format=args.date_format)
        markets = [(Path(market_csv).stem, market, market_volatility(market, horizon))]
    else:
        names = [args.decade] if args.decade else list(DECADES)
        markets = [(name, decade_market(name), DECADES[name][1]) for name in names]

    cells = []
    for label, market, market_vol in markets:
        for drift in drifts:
            params = GbmParams(drift, market_vol if vol is None else vol, horizon_periods=horizon)
            rep = alpha_inflation_experiment(
                market, params, rf, paths, SeedSpec(seed),
                two_sided=args.two_sided, excess=not args.raw_dependent,
                conditional=args.conditional, workers=args.workers)
            cells.append((f"{label} {drift:.0%}", rep))
    _emit(reports.run_mc_report(cells).render(args.format), args.out)
    return EXIT_OK


def cmd_golden(args) -> int:
    run = run_all_goldens(args.fixtures_dir)
    _emit(run.report(), args.out)
    return EXIT_OK if run.ok else EXIT_MISMATCH


class _RfAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.rf_given = True


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("md", "csv", "json"), default="md")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--rf", type=float, default=0.03, action=_RfAction,
                        help="annual risk-free rate as a decimal (default 0.03)")
    common.add_argument("--fixtures-dir", help="read tabulated fixtures from this directory")
    common.set_defaults(rf_given=False)

    parser = argparse.ArgumentParser(prog="dgpkit", description="Return-convention and portfolio-accounting toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="log vs net statistics of a monthly price CSV")
    p.add_argument("prices", help="CSV with date,close columns")
    p.add_argument("--tbill", help="CSV with date,rate columns (monthly net decimals)")
    p.add_argument("--date-format", default="%Y-%m-%d")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bhls-demo", parents=[common], help="two-period long, short and long-short returns")
    p.set_defaults(func=cmd_bhls_demo)

    p = sub.add_parser("replay-table3", parents=[common], help="recompute the simulated long-short panels")
    p.set_defaults(func=cmd_replay_table3)

    p = sub.add_parser("mc-alpha", parents=[common], help="alpha t-values from log vs net returns on GBM paths")
    p.add_argument("--config", help="flat key=value file: drift, vol, paths, seed, horizon, rf, market-csv")
    p.add_argument("--seed", type=int)
    p.add_argument("--paths", type=int)
    p.add_argument("--drift", type=float, help="annual drift; default runs 0.08 and 0.16")
    p.add_argument("--vol", type=float, help="annual volatility (default: that of the market)")
    p.add_argument("--decade", choices=sorted(DECADES), help="synthetic market with this decade's moments")
    p.add_argument("--market-csv", help="market price CSV (date,close); overrides --decade")
    p.add_argument("--date-format", default="%Y-%m-%d")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--two-sided", action="store_true", help="compare absolute t-values")
    p.add_argument("--raw-dependent", action="store_true", help="do not subtract rf from the simulated asset")
    p.add_argument("--conditional", action="store_true",
                   help="count alpha crossings only among paths with a significant beta")
    p.set_defaults(func=cmd_mc_alpha)

    p = sub.add_parser("pathological", parents=[common], help="Sharpe ratios and alpha of the Up/Down pair")
    p.add_argument("--plot", metavar="PATH", help="also write an SVG line chart of both series")
    p.set_defaults(func=cmd_pathological)

    p = sub.add_parser("prop2", parents=[common], help="market-minus-Treasury vs compounded excess")
    p.add_argument("--ybar", type=float, default=0.10, help="annual log market return")
    p.add_argument("--years", type=int, default=20)
    p.add_argument("--base", type=float, default=100.0)
    p.set_defaults(func=cmd_prop2)

    p = sub.add_parser("market-share", parents=[common], help="factor capital against total market cap")
    p.set_defaults(func=cmd_market_share)

    p = sub.add_parser("golden", parents=[common], help="check every reproduced table against printed values")
    p.set_defaults(func=cmd_golden)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DegenerateSeries, SingularDesign) as exc:
        print(f"dgpkit: numerical degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (DgpError, OSError) as exc:
        print(f"dgpkit: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
