"""Command-line behaviour: table contents, error exit codes, determinism."""

import json

import pytest

from nh3econ import cli
from nh3econ.errors import SolverError


def _csv_rows(text):
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_gtfp_table(capsys):
    assert cli.run(["gtfp"]) == 0
    rows = _csv_rows(capsys.readouterr().out)
    northwest = next(r for r in rows if r["region"] == "Northwest")
    assert float(northwest["gtfp"]) == pytest.approx(0.65, abs=0.01)
    assert float(northwest["energy_intensity_kbtu_per_usd"]) == pytest.approx(18.51, abs=0.02)
    assert float(northwest["carbon_intensity_kg_per_usd"]) == pytest.approx(1.51, abs=0.02)
    assert northwest["efficient"] == "false"


def test_gtfp_missing_file_exits_2_without_output(capsys):
    assert cli.run(["gtfp", "--regions", "missing.csv"]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "missing.csv" in captured.err


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        cli.run(["transmute"])
    assert excinfo.value.code == 2


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        cli.run(["gtfp", "--frobnicate"])
    assert excinfo.value.code == 2


def test_solver_failure_exits_3(monkeypatch, capsys):
    def boom(records):
        raise SolverError("synthetic failure")

    monkeypatch.setattr("nh3econ.cli.gtfp.gtfp_scores", boom)
    assert cli.run(["gtfp"]) == 3
    assert "synthetic failure" in capsys.readouterr().err


def test_cofire_single_rate(capsys):
    assert cli.run(["cofire", "--rate", "0.03"]) == 0
    rows = _csv_rows(capsys.readouterr().out)
    assert len(rows) == 1
    assert float(rows[0]["lcoe_delta_pct"]) == pytest.approx(17.3, abs=0.1)
    assert float(rows[0]["emission_delta_kg_per_mwh"]) == pytest.approx(-25.14, abs=0.01)


def test_cofire_rejects_untabulated_rate(capsys):
    assert cli.run(["cofire", "--rate", "0.07"]) == 2
    assert "efficiency-loss" in capsys.readouterr().err


def test_carrier_delivery_json(capsys):
    assert cli.run(["carrier", "delivery", "--volume", "100", "--distance", "500",
                    "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["columns"] == ["medium", "volume_kt", "distance_km",
                                  "days", "stage", "usd_per_kg"]
    totals = {row[0]: row[5] for row in payload["rows"] if row[4] == "total"}
    assert 1.2 <= totals["NH3_with_crack"] <= 1.6
    assert 0.8 <= totals["NH3_direct"] <= 1.2


def test_scenario_supply_custom_share(capsys):
    assert cli.run(["scenario", "supply", "--share", "0.15"]) == 0
    rows = _csv_rows(capsys.readouterr().out)
    assert len(rows) == 1
    assert float(rows[0]["supply_mt"]) == pytest.approx(39.16, abs=0.01)


def test_scenario_demand_sector_rows(capsys):
    assert cli.run(["scenario", "demand"]) == 0
    rows = _csv_rows(capsys.readouterr().out)
    level5_total = next(r for r in rows
                        if r["level"] == "Level 5" and r["sector"] == "total")
    sectors = [r for r in rows if r["level"] == "Level 5" and r["sector"] != "total"]
    assert float(level5_total["demand_mt"]) == pytest.approx(
        sum(float(r["demand_mt"]) for r in sectors), abs=2e-4)


def test_output_file_writing(tmp_path, capsys):
    target = tmp_path / "gtfp.csv"
    assert cli.run(["gtfp", "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert "Northwest" in target.read_text()


def test_report_tree_is_deterministic(tmp_path):
    first = tmp_path / "first"
    second = tmp_path / "second"
    assert cli.run(["report", "--output", str(first)]) == 0
    assert cli.run(["report", "--output", str(second)]) == 0
    first_files = sorted(p.name for p in first.iterdir())
    second_files = sorted(p.name for p in second.iterdir())
    assert first_files == second_files
    assert len(first_files) == 8
    for name in first_files:
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_float_format_is_trimmed():
    assert cli.fmt(1.0) == "1"
    assert cli.fmt(0.65) == "0.65"
    assert cli.fmt(0.65304) == "0.653"
    assert cli.fmt(-0.00001) == "0"
    assert cli.fmt(True) == "true"
    assert cli.fmt("NH3") == "NH3"
