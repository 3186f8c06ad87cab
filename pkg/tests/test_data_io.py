"""Dataset loading, validation, provenance and manifest checks."""

import shutil

import pytest

from nh3econ import data_io
from nh3econ.errors import InputError


def test_bundled_regions():
    records = data_io.load_regions(data_io.bundled_regions_path())
    assert len(records) == 6
    east = next(r for r in records if r.name == "East")
    assert east.gdp_busd == pytest.approx(5363.89)
    assert east.energy_mtce == pytest.approx(1452.58)


def test_regions_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("region,energy_mtce,labour_m,capital_busd,co2_mt,gdp_busd\n")
    with pytest.raises(InputError, match="no records"):
        data_io.load_regions(path)


def test_regions_missing_file(tmp_path):
    with pytest.raises(InputError, match="not found"):
        data_io.load_regions(tmp_path / "nope.csv")


def test_regions_wrong_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("region,energy\nNorth,1\n")
    with pytest.raises(InputError, match="header"):
        data_io.load_regions(path)


def test_regions_negative_value_names_location(tmp_path):
    path = tmp_path / "neg.csv"
    path.write_text(
        "region,energy_mtce,labour_m,capital_busd,co2_mt,gdp_busd\n"
        "North,943.5,87.28,2290.21,2521.59,1697.42\n"
        "Broken,100,1,1,1,-5\n")
    with pytest.raises(InputError) as excinfo:
        data_io.load_regions(path)
    message = str(excinfo.value)
    assert "Broken" in message and "gdp_busd" in message and "line 3" in message


def test_regions_nonnumeric_cell(tmp_path):
    path = tmp_path / "nan.csv"
    path.write_text(
        "region,energy_mtce,labour_m,capital_busd,co2_mt,gdp_busd\n"
        "North,abc,87.28,2290.21,2521.59,1697.42\n")
    with pytest.raises(InputError, match="energy_mtce"):
        data_io.load_regions(path)


def test_bundled_params_values():
    carriers = data_io.load_bundled_params("carriers")
    assert carriers["reformer_capex_10kt"] == 354.0
    assert carriers.entry("reformer_capex_10kt").unit == "USD_per_t_yr"
    assert carriers.version == "cn-2019-v1"
    cofiring = data_io.load_bundled_params("cofiring")
    assert cofiring["base_emission_kg_per_mwh"] == 838.0


def test_provenance_nonempty_everywhere():
    for namespace in data_io.SCHEMAS:
        params = data_io.load_bundled_params(namespace)
        for key in params:
            assert params.entry(key).provenance.strip(), key


def test_missing_key_listed(tmp_path):
    source = (data_io.data_dir() / "cofiring.csv").read_text()
    lines = [line for line in source.splitlines()
             if not line.startswith("coal_consumption_tce_per_mwh")]
    path = tmp_path / "cofiring.csv"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(InputError, match="coal_consumption_tce_per_mwh"):
        data_io.load_params(path, "cofiring", data_io.COFIRING_SCHEMA)


def test_duplicate_key_rejected(tmp_path):
    path = tmp_path / "dup.csv"
    path.write_text("key,value,unit,provenance\n"
                    "a,1,x,src\n"
                    "a,2,x,src\n")
    with pytest.raises(InputError, match="duplicate"):
        data_io.load_params(path, "test")


def test_unit_mismatch_rejected(tmp_path):
    path = tmp_path / "units.csv"
    path.write_text("key,value,unit,provenance\n"
                    "wacc,0.08,percent,src\n")
    with pytest.raises(InputError, match="unit"):
        data_io.load_params(path, "carriers", {"wacc": "fraction"})


def test_empty_provenance_rejected(tmp_path):
    path = tmp_path / "noprov.csv"
    path.write_text("key,value,unit,provenance\n"
                    "a,1,x,\n")
    with pytest.raises(InputError, match="provenance"):
        data_io.load_params(path, "test")


def test_unknown_key_lookup_raises():
    params = data_io.load_bundled_params("carriers")
    with pytest.raises(InputError, match="no key"):
        params["does_not_exist"]


def test_round_trip_is_byte_identical():
    directory = data_io.data_dir()
    for name in ("carriers.csv", "cofiring.csv", "scenarios.csv", "gapfill.csv"):
        params = data_io.load_params(directory / name, name)
        assert params.serialize() == (directory / name).read_text(encoding="utf-8")
    for name in ("regions_2019.csv", "supply_levels.csv", "demand_levels.csv",
                 "calibration.csv", "manifest.csv"):
        table = data_io._read_table(directory / name)
        assert table.serialize() == (directory / name).read_text(encoding="utf-8")


def test_overrides_layering(tmp_path):
    override = tmp_path / "override.csv"
    override.write_text("key,value,unit,provenance\n"
                        "electricity_usd_per_mwh,40.0,USD_per_MWh,user override\n")
    params = data_io.load_bundled_params("carriers", override)
    assert params["electricity_usd_per_mwh"] == 40.0
    assert params["wacc"] == 0.08
    rows = dict((k, v) for k, v, _, _ in params.rows())
    assert rows["electricity_usd_per_mwh"] == 40.0


def test_manifest_verifies():
    manifest = data_io.load_manifest()
    assert manifest.version == "cn-2019-v1"
    assert "regions_2019.csv" in manifest.files
    assert len(manifest.calibration) >= 3


def test_manifest_detects_tampering(tmp_path):
    target = tmp_path / "data"
    shutil.copytree(data_io.data_dir(), target)
    regions = target / "regions_2019.csv"
    regions.write_text(regions.read_text().replace("5363.89", "5363.88"))
    with pytest.raises(InputError, match="digest"):
        data_io.load_manifest(target)


def test_calibration_ledger_contents():
    ledger = {e.constant: e for e in data_io.calibration_ledger()}
    assert "coal_price_usd_per_tce" in ledger
    assert "electricity_per_t_nh3_mwh" in ledger
    for entry in ledger.values():
        assert entry.oracle.strip()
    # the ledgered coal price matches the bundled co-firing dataset
    cofiring = data_io.load_bundled_params("cofiring")
    assert ledger["coal_price_usd_per_tce"].value == pytest.approx(
        cofiring["coal_price_usd_per_tce"], rel=1e-12)
    # and sits inside the observed trading range
    assert (cofiring["coal_price_min_usd_per_tce"]
            <= ledger["coal_price_usd_per_tce"].value
            <= cofiring["coal_price_max_usd_per_tce"])


def test_calibrated_carrier_knobs_match_dataset():
    ledger = {e.constant: e.value for e in data_io.calibration_ledger()}
    carriers = data_io.load_bundled_params("carriers")
    for key in ("electricity_usd_per_mwh", "delivery_buffer_days", "truck_opex_rate"):
        assert carriers[key] == pytest.approx(ledger[key], rel=1e-12)


def test_completeness_consumers_vs_providers():
    missing = data_io.check_completeness()
    assert missing == {namespace: [] for namespace in data_io.SCHEMAS}
    # every key the carrier builders consume is provided by the dataset
    from nh3econ.carriers import REQUIRED_KEYS

    params = data_io.load_bundled_params("carriers")
    params.require(REQUIRED_KEYS)


def test_levels_loaders():
    supply = data_io.load_supply_levels()
    assert [lvl.renewable_share for lvl in supply] == [0.15, 0.35, 0.65]
    demand = data_io.load_demand_levels()
    assert len(demand) == 5
    assert demand[4].pr_mobility == 0.80


def test_unknown_namespace():
    with pytest.raises(InputError, match="namespace"):
        data_io.load_bundled_params("mystery")
