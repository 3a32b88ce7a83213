import math

import numpy as np
import pytest

from dgpkit import long_short as ls
from dgpkit.errors import DomainError, InsufficientData, ReturnUndefined, ShapeError, ZeroCostViolation
from dgpkit.fixtures import load_table3
from dgpkit.returns import Convention, returns_from_prices
from dgpkit.simulation import riskfree_leg


@pytest.mark.parametrize("l1,s1,s0,expected", [(110, 103, 100, 0.07), (1100, 1030, 1000, 0.07),
                                               (115, 103, 100, 0.12)])
def test_net_return_difference(l1, s1, s0, expected):
    assert ls.net_return_difference(l1, s1, s0) == pytest.approx(expected, abs=1e-15)


def test_value_and_return_orderings_conflict():
    big = ls.bhls_from_legs([1000, 1100], [1000, 1030])
    small = ls.bhls_from_legs([100, 115], [100, 103])
    assert big.values.tolist() == [0, 70]
    assert small.values.tolist() == [0, 12]
    assert big.terminal > small.terminal
    assert ls.net_return_difference(1100, 1030, 1000) < ls.net_return_difference(115, 103, 100)


def test_prls_mean_of_two_periods():
    stats = ls.prls_stats(ls.LegPair([110, 115], [103, 103], 100))
    assert stats.mean_diff == pytest.approx(0.095)


def test_prls_identical_legs_have_no_spread():
    stats = ls.prls_stats(ls.LegPair([101, 99, 104], [101, 99, 104], 100))
    assert stats.mean_diff == 0 and stats.var_diff == 0


def test_prls_variance_against_difference_series():
    rng = np.random.default_rng(3)
    lv, sv = 100 + rng.normal(0, 5, 50), 100 + rng.normal(0, 4, 50)
    stats = ls.prls_stats(ls.LegPair(lv, sv, 100))
    diff = (lv - sv) / 100
    assert stats.var_diff == pytest.approx(diff.var(ddof=1), rel=1e-10)
    assert stats.mean_diff == pytest.approx(diff.mean(), rel=1e-12)


def test_prls_needs_two_periods():
    with pytest.raises(InsufficientData):
        ls.prls_stats(ls.LegPair([110], [103], 100))


@pytest.mark.parametrize("long,short,value", [
    ([100, 90, 115], [100, 10, 70], [0, 80, 45]),
    ([100, 10, 70], [100, 40, 80], [0, -30, -10]),
    ([100, 7, 9], [100, 7, 9], [0, 0, 0]),
])
def test_bhls_value(long, short, value):
    assert ls.bhls_from_legs(long, short).values.tolist() == value


def test_bhls_has_no_returns():
    b = ls.bhls_from_legs([100, 150, 100], [100, 80, 100])
    with pytest.raises(ReturnUndefined):
        b.returns()
    with pytest.raises(ReturnUndefined):
        returns_from_prices(b)


def test_bhls_requires_zero_cost():
    with pytest.raises(ZeroCostViolation):
        ls.bhls_from_legs([100, 110], [90, 95])
    with pytest.raises(ZeroCostViolation):
        ls.BhlsSeries([1.0, 2.0])
    with pytest.raises(ShapeError):
        ls.bhls_from_legs([100, 110, 120], [100, 95])


def test_leg_difference_means():
    a_long, a_short = [100, 150, 100], [100, 80, 100]
    b_long, b_short = [100, 90, 115], [100, 10, 70]
    assert ls.leg_return_diff_mean(a_long, a_short, Convention.LOG) == pytest.approx(0.0, abs=5e-4)
    assert ls.leg_return_diff_mean(a_long, a_short, Convention.NET) == pytest.approx(0.058, abs=5e-4)
    assert ls.leg_return_diff_mean(b_long, b_short, Convention.NET) == pytest.approx(-2.461, abs=5e-3)


@pytest.mark.parametrize("conv,final,mean", [(Convention.LOG, 140.30, 0.1032), (Convention.NET, 142.21, 0.1786)])
def test_compounding_on_excess_returns(conv, final, mean):
    risky = load_table3("a").risky
    path = ls.compound_on_excess(50, risky, riskfree_leg(50, 0.03, 10), conv)
    assert path.values[-1] == pytest.approx(final, abs=0.05)
    assert path.mean == pytest.approx(mean, abs=5e-4)
    assert path.values[0] == 50


def test_compounding_on_zero_excess_stays_flat():
    p = [50, 55, 48, 60]
    path = ls.compound_on_excess(50, p, p, Convention.LOG)
    assert path.values.tolist() == [50.0] * 4 and path.mean == 0


def test_compounding_on_excess_rejects_gross():
    with pytest.raises(DomainError):
        ls.compound_on_excess(50, [1, 2], [1, 1], Convention.GROSS)


def test_gap_between_separate_and_excess_compounding():
    g = ls.prop2_gap(0.10, 0.03, 20, 100)
    assert g.mmtb == pytest.approx(557, abs=1)
    assert g.xmfv == pytest.approx(306, abs=1)
    assert g.underestimate_frac == pytest.approx(0.45, abs=0.005)


def test_gap_with_net_excess():
    g = ls.prop2_gap_net(0.10, 0.03, 20, 100)
    assert math.exp(0.10) - math.exp(0.03) == pytest.approx(0.07472, abs=5e-6)
    assert 100 + g.xmfv == pytest.approx(423, abs=1)
    assert g.underestimate_frac == pytest.approx(0.42, abs=0.005)


def test_gap_under_daily_compounding_over_a_month():
    g = ls.prop2_gap_discrete(0.10, 0.03, 30, 365)
    m, f = 0.10 / 365, 0.03 / 365
    mmtb = (1 + m) ** 30 - (1 + f) ** 30
    assert g.underestimate_frac == pytest.approx((mmtb - ((1 + m - f) ** 30 - 1)) / mmtb, rel=1e-12)
    assert g.underestimate_frac == pytest.approx(0.0025, abs=0.0003)


def test_gap_vanishes_for_equal_rates():
    g = ls.prop2_gap(0.04, 0.04, 15, 100)
    assert g.mmtb == 0 and g.xmfv == 0


def test_raising_both_rates_widens_the_gap():
    assert ls.corollary1_check(0.10, 0.03, 0.02, 20)
    assert not ls.corollary1_check(0.10, 0.03, 0.0, 20)


def test_power_inequality_examples():
    assert ls.power_inequality(2, 1, 2)
    assert (0.10 - 0.03) ** 3 == pytest.approx(3.43e-4)
    assert 0.10**3 - 0.03**3 == pytest.approx(9.73e-4)
    assert ls.power_inequality(0.10, 0.03, 3)


def test_power_inequality_is_an_equality_at_zero():
    for n in (1, 2, 7):
        assert not ls.power_inequality(3.0, 0.0, n)


def test_panel_b_sign_divergence():
    fx = load_table3("b")
    bh = ls.bhls_from_legs(fx.risky, riskfree_leg(50, 0.03, 10))
    comp = ls.compound_on_excess(50, fx.risky, riskfree_leg(50, 0.03, 10), Convention.LOG)
    assert bh.terminal == pytest.approx(-18.66, abs=0.01)
    assert comp.values[-1] == pytest.approx(36.17, abs=0.01)
