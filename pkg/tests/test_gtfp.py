"""Efficiency model checks: frozen scores for the bundled table, closed-form
utilities, and the structural DEA properties on randomized records."""

import numpy as np
import pytest

from nh3econ import data_io, gtfp
from nh3econ.errors import InputError
from oracles import random_regions

# Scores for the bundled 2019 table, frozen from an independent
# interior-point solve of the same programs.
FROZEN_SCORES = {
    "North": 0.885728,
    "Northeast": 0.745158,
    "East": 1.000000,
    "Mid-South": 1.000000,
    "Southwest": 0.694742,
    "Northwest": 0.653042,
}


@pytest.fixture(scope="module")
def regions():
    return data_io.load_regions(data_io.bundled_regions_path())


@pytest.fixture(scope="module")
def report(regions):
    return gtfp.gtfp_scores(regions)


def test_bundled_scores_match_frozen_oracle(report):
    by_name = {row.name: row.gtfp for row in report}
    for name, expected in FROZEN_SCORES.items():
        assert by_name[name] == pytest.approx(expected, abs=1e-4), name


def test_efficient_flags(report):
    flags = {row.name: row.efficient for row in report}
    assert flags == {
        "North": False, "Northeast": False, "East": True,
        "Mid-South": True, "Southwest": False, "Northwest": False,
    }


def test_score_bounds_and_frontier(report):
    assert all(0.0 < row.gtfp <= 1.0 + 1e-9 for row in report)
    assert any(row.efficient for row in report)


def test_single_region_is_frontier():
    record = gtfp.RegionRecord("solo", 1.0, 2.0, 3.0, 4.0, 5.0)
    assert gtfp.dea_score([record], 0) == pytest.approx(1.0, abs=1e-9)


def test_identical_regions_are_both_frontier():
    record = gtfp.RegionRecord("a", 1.0, 2.0, 3.0, 4.0, 5.0)
    twin = gtfp.RegionRecord("b", 1.0, 2.0, 3.0, 4.0, 5.0)
    assert gtfp.dea_score([record, twin], 0) == pytest.approx(1.0, abs=1e-9)
    assert gtfp.dea_score([record, twin], 1) == pytest.approx(1.0, abs=1e-9)


def test_build_dea_lp_validation(regions):
    with pytest.raises(InputError):
        gtfp.build_dea_lp([], 0)
    with pytest.raises(InputError):
        gtfp.build_dea_lp(regions, 17)


def test_record_requires_positive_values():
    with pytest.raises(InputError):
        gtfp.RegionRecord("bad", 0.0, 1.0, 1.0, 1.0, 1.0)
    with pytest.raises(InputError):
        gtfp.RegionRecord("bad", 1.0, 1.0, 1.0, 1.0, -2.0)


def test_intensities_frozen_values(regions):
    kbtu_per_tce = 29.3076 / (1055.06 * 1e3 / 1e9)
    by_name = {r.name: r for r in regions}
    cases = {
        # (energy Mtce, co2 Mt, gdp B USD) ratios computed independently
        "Mid-South": (7.32, 0.51),
        "Northwest": (18.51, 1.51),
        "Southwest": (11.38, 0.74),
    }
    for name, (ei_expected, ci_expected) in cases.items():
        record = by_name[name]
        ei, ci = gtfp.intensities(record)
        oracle_ei = record.energy_mtce * 1e6 * kbtu_per_tce / (record.gdp_busd * 1e9)
        oracle_ci = record.co2_mt * 1e9 / (record.gdp_busd * 1e9)
        assert ei == pytest.approx(oracle_ei, rel=1e-12)
        assert ci == pytest.approx(oracle_ci, rel=1e-12)
        assert ei == pytest.approx(ei_expected, abs=0.02)
        assert ci == pytest.approx(ci_expected, abs=0.02)


def test_capital_stock_recursion():
    assert gtfp.capital_stock_next(100.0, 10.0, 0.096) == pytest.approx(100.4)
    assert gtfp.capital_stock_next(0.0, 5.0, 0.5) == pytest.approx(5.0)
    assert gtfp.capital_stock_next(100.0, 0.0, 0.0) == pytest.approx(100.0)
    with pytest.raises(InputError):
        gtfp.capital_stock_next(100.0, 10.0, 1.0)
    with pytest.raises(InputError):
        gtfp.capital_stock_next(-1.0, 10.0, 0.096)


def test_extrapolate_emission():
    assert gtfp.extrapolate_emission(100.0, 0.0, 5) == pytest.approx(100.0)
    assert gtfp.extrapolate_emission(100.0, 0.05, 5) == pytest.approx(127.62815625)
    with pytest.raises(InputError):
        gtfp.extrapolate_emission(0.0, 0.05, 5)
    with pytest.raises(InputError):
        gtfp.extrapolate_emission(100.0, 0.05, -1)


def test_tibet_gap_fill_matches_ledger():
    params = data_io.load_bundled_params("gapfill")
    cagr = gtfp.series_cagr(params["national_co2_2014_mt"],
                            params["national_co2_2019_mt"], 5)
    ledger = {e.constant: e.value for e in data_io.calibration_ledger()}
    assert cagr == pytest.approx(ledger["national_co2_cagr_2014_2019"], abs=1e-9)
    estimate = gtfp.gap_fill_emission_2019(params)
    assert estimate == pytest.approx(
        params["tibet_co2_2014_mt"] * (1 + cagr) ** 5, rel=1e-12)


def _scores(records):
    return np.array([gtfp.dea_score(records, i) for i in range(len(records))])


def test_units_invariance_per_input():
    rng = np.random.default_rng(11)
    for _ in range(8):
        records = random_regions(rng)
        base = _scores(records)
        scale = float(rng.uniform(0.1, 25.0))
        field = rng.choice(["energy_mtce", "labour_m", "capital_busd", "co2_mt"])
        scaled = [
            gtfp.RegionRecord(
                r.name,
                r.energy_mtce * (scale if field == "energy_mtce" else 1.0),
                r.labour_m * (scale if field == "labour_m" else 1.0),
                r.capital_busd * (scale if field == "capital_busd" else 1.0),
                r.co2_mt * (scale if field == "co2_mt" else 1.0),
                r.gdp_busd,
            )
            for r in records
        ]
        assert np.allclose(_scores(scaled), base, atol=1e-8)


def test_dominance():
    rng = np.random.default_rng(12)
    for _ in range(8):
        records = random_regions(rng)
        weaker = records[int(rng.integers(len(records)))]
        dominator = gtfp.RegionRecord(
            "dominator",
            weaker.energy_mtce * float(rng.uniform(0.4, 0.95)),
            weaker.labour_m * float(rng.uniform(0.4, 0.95)),
            weaker.capital_busd * float(rng.uniform(0.4, 0.95)),
            weaker.co2_mt * float(rng.uniform(0.4, 0.95)),
            weaker.gdp_busd * float(rng.uniform(1.0, 1.5)),
        )
        extended = [*records, dominator]
        scores = _scores(extended)
        weaker_idx = records.index(weaker)
        assert scores[-1] >= scores[weaker_idx] - 1e-9


def test_clone_insensitivity():
    rng = np.random.default_rng(13)
    for _ in range(8):
        records = random_regions(rng)
        base = _scores(records)
        clone_of = records[int(rng.integers(len(records)))]
        clone = gtfp.RegionRecord("clone", clone_of.energy_mtce, clone_of.labour_m,
                                  clone_of.capital_busd, clone_of.co2_mt,
                                  clone_of.gdp_busd)
        with_clone = _scores([*records, clone])[: len(records)]
        assert np.allclose(with_clone, base, atol=1e-9)
