import math

import numpy as np
import pytest

from dgpkit.errors import DomainError, ShapeError
from dgpkit.returns import Convention, returns_from_prices
from dgpkit.simulation import (
    DECADES,
    GbmParams,
    SeedSpec,
    alpha_inflation_experiment,
    decade_market,
    gbm_path,
    simulate_tstats,
    synthetic_market,
    table3_replay,
    tabulate,
)
from dgpkit.fixtures import load_table3


def test_zero_volatility_path_grows_at_drift():
    p = GbmParams(0.08, 0.0)
    path = gbm_path(p, SeedSpec(1), 0)
    np.testing.assert_allclose(np.diff(np.log(path)), 0.08 / 12, rtol=1e-12)


def test_log_increment_mean_within_three_standard_errors():
    p = GbmParams(0.08, 0.133)
    seed = SeedSpec(7)
    steps = np.concatenate([np.diff(np.log(gbm_path(p, seed, i))) for i in range(10_000)])
    se = p.log_step_sd / math.sqrt(steps.size)
    assert abs(steps.mean() - (0.08 - 0.133**2 / 2) / 12) < 3 * se
    assert steps.std() == pytest.approx(p.log_step_sd, rel=0.01)


def test_same_seed_same_path():
    p = GbmParams(0.16, 0.2)
    a = gbm_path(p, SeedSpec(99), 42)
    b = gbm_path(p, SeedSpec(99), 42)
    assert a.tobytes() == b.tobytes()
    assert a.tobytes() != gbm_path(p, SeedSpec(99), 43).tobytes()
    assert a.tobytes() != gbm_path(p, SeedSpec(100), 42).tobytes()


def test_seed_range():
    with pytest.raises(ValueError):
        SeedSpec(-1)
    with pytest.raises(ValueError):
        SeedSpec(2**64)


def test_params_validation():
    with pytest.raises(DomainError):
        GbmParams(0.1, -0.2)
    with pytest.raises(DomainError):
        GbmParams(0.1, 0.2, horizon_periods=0)


@pytest.mark.parametrize("name", sorted(DECADES))
def test_synthetic_market_matches_decade_moments(name):
    mean, vol = DECADES[name]
    r = returns_from_prices(decade_market(name), Convention.NET).values
    assert len(r) == 120
    assert 12 * r.mean() == pytest.approx(mean, abs=1e-12)
    assert math.sqrt(12) * r.std(ddof=1) == pytest.approx(vol, abs=1e-12)


def test_degenerate_design_is_excluded_not_fatal():
    market = 100 * np.exp(0.01 * np.arange(121))
    rep = alpha_inflation_experiment(market, GbmParams(0.08, 0.0), n_paths=1, seed=SeedSpec(1))
    assert rep.excluded_paths == 1 and rep.sig_beta_count == 0
    assert math.isnan(rep.inflation_percentage)


def test_market_shorter_than_horizon():
    with pytest.raises(ShapeError):
        alpha_inflation_experiment(np.linspace(100, 120, 50), GbmParams(0.08, 0.1), n_paths=2)


def test_report_counts_and_percentage_identity():
    rep = alpha_inflation_experiment(decade_market("1990s"), GbmParams(0.16, 0.133), n_paths=800,
                                     seed=SeedSpec(3))
    assert rep.n_paths == 800
    assert all(0 <= c <= rep.n_paths for c in rep.inflation_counts.values())
    assert list(rep.inflation_counts) == [1.66, 1.98, 2.62, 3.37]
    assert rep.recomputed_percentage() == rep.inflation_percentage
    assert rep.settings["seed"] == 3 and "Philox" in rep.settings["rng"]


def test_tabulate_counting_rules():
    t = np.array([
        [1.0, 2.0, 2.0],    # crosses 1.66 and 1.98, beta significant
        [1.0, 2.0, 0.0],    # same crossing, beta not significant
        [3.0, 4.0, 5.0],    # log already above every crossing below 3.37
        [np.nan, np.nan, np.nan],
    ])
    rep = tabulate(t)
    assert rep.sig_beta_count == 2 and rep.excluded_paths == 1
    assert rep.inflation_counts == {1.66: 2, 1.98: 2, 2.62: 0, 3.37: 1}
    cond = tabulate(t, conditional=True)
    assert cond.inflation_counts == {1.66: 1, 1.98: 1, 2.62: 0, 3.37: 1}
    assert cond.inflation_percentage == pytest.approx(3 / 2)
    two = tabulate(np.array([[-1.0, -2.0, -2.0]]), two_sided=True)
    assert two.sig_beta_count == 1 and two.inflation_counts[1.66] == 1


def test_parallel_and_serial_runs_agree():
    market = decade_market("2000s")
    p = GbmParams(0.08, 0.164)
    serial = simulate_tstats(market, p, SeedSpec(5), 300, chunk_size=64)
    parallel = simulate_tstats(market, p, SeedSpec(5), 300, workers=3, chunk_size=50)
    assert serial.tobytes() == parallel.tobytes()


def test_net_and_log_regressions_share_one_path():
    # with zero volatility every path is identical, so both t-values come
    # from the same deterministic prices
    market = decade_market("1990s")
    t = simulate_tstats(market, GbmParams(0.08, 0.0), SeedSpec(1), 2)
    np.testing.assert_array_equal(t[0], t[1])


def test_replay_of_panel_a():
    rep = table3_replay(load_table3("a").risky)
    assert rep.comp_log[-1] == pytest.approx(140.30, abs=0.01)
    assert rep.comp_net[-1] == pytest.approx(142.21, abs=0.01)
    assert rep.mean_log == pytest.approx(0.1032, abs=5e-4)
    assert rep.mean_net == pytest.approx(0.1786, abs=5e-4)


def test_replay_of_panel_b():
    rep = table3_replay(load_table3("b").risky)
    assert rep.comp_log[-1] == pytest.approx(36.17, abs=0.01)
    assert rep.mean_log == pytest.approx(-0.0324, abs=5e-4)
    assert rep.mean_net == pytest.approx(0.0080, abs=5e-4)
    assert rep.bhls_terminal == pytest.approx(-18.66, abs=0.01)
    assert rep.bhls_terminal < 0 < rep.comp_log[-1]


def test_synthetic_market_rejects_impossible_moments():
    with pytest.raises(DomainError):
        synthetic_market(0.0, 20.0)
