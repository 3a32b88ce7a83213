"""Seeded randomized sweeps shared by the property tests and the acceptance run.

Each sweep draws ``n`` independent cases, checks every one through the
library and returns the number of cases checked. A failing case raises
AssertionError with the offending inputs.
"""

from __future__ import annotations

import math

import numpy as np

from dgpkit import long_short as ls
from dgpkit.econometrics import ols
from dgpkit.returns import Convention, ReturnSeries, arithmetic_mean, convert, geometric_mean, returns_from_prices
from dgpkit.simulation import GbmParams, SeedSpec, decade_market, simulate_tstats

N_CASES = 10_000


def random_path(rng, length):
    return 100 * np.exp(np.r_[0, np.cumsum(rng.normal(0.0, 0.08, length - 1))])


def am_gm(n=N_CASES, seed=1):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        p = random_path(rng, int(rng.integers(3, 40)))
        mu = arithmetic_mean(returns_from_prices(p, Convention.NET))
        ybar = geometric_mean(p)
        assert 1 + mu > math.exp(ybar), (p, mu, ybar)
    return n


def path_independence(n=N_CASES, seed=2):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        length = int(rng.integers(2, 40))
        a = random_path(rng, length)
        b = random_path(rng, length)
        b[0], b[-1] = a[0], a[-1]
        ga, gb = geometric_mean(a), geometric_mean(b)
        assert abs(ga - gb) <= 1e-12, (a, b)
    return n


def conversion_round_trip(n=N_CASES, seed=3):
    rng = np.random.default_rng(seed)
    # log-uniform magnitudes on both sides of zero, inside (-1, 1e6)
    gains = np.exp(rng.uniform(math.log(1e-12), math.log(1e6), n // 2))
    losses = -np.exp(rng.uniform(math.log(1e-12), math.log(1 - 1e-9), n - n // 2))
    x = np.concatenate([gains, losses])
    back = convert(convert(ReturnSeries(x, Convention.NET), Convention.LOG), Convention.NET).values
    err = np.abs(back - x) / np.maximum(np.abs(x), 1e-300)
    worst = int(err.argmax())
    assert err[worst] <= 1e-12, (x[worst], back[worst])
    return n


def power_inequality(n=N_CASES, seed=4):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        y = math.exp(rng.uniform(math.log(1e-3), math.log(10.0)))
        x = y * math.exp(rng.uniform(math.log(1e-6), math.log(1 - 1e-6)))
        k = int(rng.integers(2, 31))
        assert ls.power_inequality(y, x, k), (y, x, k)
    return n


def gap_inequalities(n=N_CASES, seed=5):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        r = rng.uniform(1e-4, 0.2)
        ybar = r + rng.uniform(1e-4, 0.3)
        k = int(rng.integers(1, 51))
        delta = rng.uniform(1e-4, 0.1)
        g = ls.prop2_gap(ybar, r, k, 100.0)
        assert g.mmtb > g.xmfv, (ybar, r, k)
        assert ls.corollary1_check(ybar, r, delta, k), (ybar, r, delta, k)
    return n


def prls_variance(n=N_CASES, seed=6):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        length = int(rng.integers(2, 50))
        s0 = float(rng.uniform(1, 1000))
        lv = s0 * np.exp(rng.normal(0, 0.1, length))
        sv = s0 * np.exp(rng.normal(0, 0.1, length))
        stats = ls.prls_stats(ls.LegPair(lv, sv, s0))
        d = [(a - b) / s0 for a, b in zip(lv.tolist(), sv.tolist())]
        m = sum(d) / length
        brute = sum((v - m) ** 2 for v in d) / (length - 1)
        assert abs(stats.var_diff - brute) <= 1e-9 * max(brute, 1e-12), (lv, sv, s0)
        assert abs(stats.mean_diff - m) <= 1e-12 * max(1.0, abs(m))
    return n


def normal_equation_solve(y, X):
    D = np.column_stack([np.ones(len(y)), X])
    return np.linalg.inv(D.T @ D) @ (D.T @ y)


def ols_oracle(n=N_CASES, seed=7):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        k = int(rng.integers(1, 4))
        obs = int(rng.integers(k + 3, 21))
        X = rng.normal(size=(obs, k))
        y = rng.normal() + X @ rng.normal(size=k) + rng.normal(scale=0.5, size=obs)
        fit = ols(y, X if k > 1 else X[:, 0])
        coef = np.r_[fit.alpha, fit.betas]
        oracle = normal_equation_solve(y, X)
        assert np.abs(coef - oracle).max() <= 1e-9 * max(1.0, np.abs(oracle).max()), (y, X)
    return n


def mc_determinism(n=N_CASES, seed=8):
    market = decade_market("1990s")
    params = GbmParams(0.08, 0.133)
    spec = SeedSpec(seed)
    serial = simulate_tstats(market, params, spec, n, workers=1, chunk_size=n)
    pooled = simulate_tstats(market, params, spec, n, workers=4, chunk_size=997)
    assert serial.tobytes() == pooled.tobytes()
    return n


ALL = {
    "AM-GM strictness": am_gm,
    "geometric-mean path independence": path_independence,
    "conversion round-trip at 1e-12": conversion_round_trip,
    "power inequality (y > x > 0, n in 2..30)": power_inequality,
    "gap and rate-shift strict inequalities": gap_inequalities,
    "PRLS variance vs brute force": prls_variance,
    "OLS vs normal equations at 1e-9": ols_oracle,
    "MC determinism under varied parallelism": mc_determinism,
}
