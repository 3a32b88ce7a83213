from dgpkit.goldens import TABLE7, GoldenCheck, run_all_goldens
from dgpkit.reports import format_percent


def test_every_golden_matches():
    run = run_all_goldens()
    assert run.ok, run.report()


def test_each_claimed_table_has_checks():
    tables = set(run_all_goldens().max_deviation())
    assert {"Table 2", "Table 3", "Table 9", "Compounding gap", "Factor capital"} <= tables


def test_printed_counts_reproduce_printed_percentages():
    for sig, counts, pct in TABLE7.values():
        assert format_percent(sum(counts) / sig) == f"{pct}"


def test_check_tolerance_is_inclusive():
    assert GoldenCheck("t", "c", 1.0, 1.5, 0.5).passed
    assert not GoldenCheck("t", "c", 1.0, 1.6, 0.5).passed


def test_report_lists_max_deviation_per_table():
    text = run_all_goldens().report()
    assert "Table 3: " in text and "max deviation" in text
