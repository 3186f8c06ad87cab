"""Command-line front end: run each analysis and emit plot-ready tables.

Every subcommand computes its full table first and only then writes, so a
failing run leaves no partial output. Output is deterministic: fixed row
ordering and a fixed float format (four decimals, trailing zeros
trimmed), which makes runs byte-comparable.

Exit codes: 0 success, 2 input error (including usage), 3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import carriers, cofiring, data_io, gtfp, scenarios
from .errors import InputError, SolverError

DELIVERY_VOLUMES_KT = (10.0, 30.0, 50.0, 100.0)
DELIVERY_DISTANCES_KM = (500.0, 1000.0, 1500.0, 2000.0, 2500.0, 3000.0)
STORAGE_DAYS = (30.0, 150.0, 365.0, 1000.0, 2000.0)
CHAIN_ORDER = ("NH3_with_crack", "NH3_direct", "LH2", "pipeline")


def fmt(value) -> str:
    """Four decimals with trailing zeros trimmed; stable across runs."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    text = f"{float(value):.4f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


class Table:
    """An ordered table with a descriptive header comment."""

    def __init__(self, description: str, columns: tuple[str, ...]):
        self.description = description
        self.columns = columns
        self.rows: list[tuple] = []

    def add(self, *row) -> None:
        if len(row) != len(self.columns):
            raise ValueError("row width mismatch")
        self.rows.append(row)

    def to_csv(self) -> str:
        lines = [f"# {self.description}", ",".join(self.columns)]
        lines.extend(",".join(fmt(cell) for cell in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        def cell(value):
            if isinstance(value, (bool, str)):
                return value
            return float(fmt(value))
        payload = {
            "description": self.description,
            "columns": list(self.columns),
            "rows": [[cell(v) for v in row] for row in self.rows],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def render(self, output_format: str) -> str:
        return self.to_json() if output_format == "json" else self.to_csv()


def _emit(table: Table, output_format: str, output: str | None) -> None:
    text = table.render(output_format)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dataset_version(args) -> str:
    manifest = data_io.load_manifest(args.data_dir)
    return manifest.version


def _gtfp_table(args) -> Table:
    regions_path = args.regions or data_io.bundled_regions_path(args.data_dir)
    records = data_io.load_regions(regions_path)
    table = Table(
        f"regional efficiency scores and intensity metrics; dataset {_dataset_version(args)}",
        ("region", "gtfp", "energy_intensity_kbtu_per_usd",
         "carbon_intensity_kg_per_usd", "efficient"),
    )
    for row in gtfp.gtfp_scores(records):
        table.add(row.name, row.gtfp, row.energy_intensity_kbtu_per_usd,
                  row.carbon_intensity_kg_per_usd, row.efficient)
    return table


def _carrier_params(args) -> data_io.ParameterSet:
    return data_io.load_bundled_params("carriers", args.params, args.data_dir)


def _delivery_rows(params, table: Table, volumes, distances) -> None:
    for volume in volumes:
        chains = carriers.builtin_chains(params, volume)
        for name in CHAIN_ORDER:
            chain = chains[name]
            for distance in distances:
                query = carriers.default_query(params, volume, distance)
                breakdown = carriers.delivery_cost(chain, query)
                for stage in breakdown.stages:
                    table.add(name, volume, distance, 0, stage.name, stage.usd_per_kg)
                table.add(name, volume, distance, 0, "total", breakdown.total_usd_per_kg)


def _delivery_table(args) -> Table:
    params = _carrier_params(args)
    table = Table(
        f"hydrogen delivery cost breakdown by carrier; dataset {_dataset_version(args)}",
        ("medium", "volume_kt", "distance_km", "days", "stage", "usd_per_kg"),
    )
    _delivery_rows(params, table, args.volume, args.distance)
    return table


def _storage_table(args) -> Table:
    params = _carrier_params(args)
    table = Table(
        f"hydrogen storage cost breakdown by carrier and duration; dataset {_dataset_version(args)}",
        ("medium", "volume_kt", "distance_km", "days", "stage", "usd_per_kg"),
    )
    for volume in args.volume:
        chains = carriers.builtin_chains(params, volume)
        for name in ("NH3_with_crack", "LH2"):
            medium = "NH3" if name.startswith("NH3") else "LH2"
            for days in args.days:
                query = carriers.default_query(params, volume, 0.0, days)
                breakdown = carriers.storage_cost(chains[name], query)
                for stage in breakdown.stages:
                    table.add(medium, volume, 0, days, stage.name, stage.usd_per_kg)
                table.add(medium, volume, 0, days, "total", breakdown.total_usd_per_kg)
    return table


def _cofire_table(args) -> Table:
    params_set = data_io.load_bundled_params("cofiring", args.params, args.data_dir)
    params = cofiring.CofiringParams.from_mapping(params_set)
    rates = cofiring.STANDARD_RATES if args.all or args.rate is None else (args.rate,)
    table = Table(
        f"coal/ammonia co-firing costs and emission intensity; dataset {_dataset_version(args)}",
        ("rate", "mixed_fuel_cost_usd_per_tce", "fuel_cost_delta_pct",
         "lcoe_usd_per_mwh", "lcoe_delta_pct", "emission_kg_per_mwh",
         "emission_delta_kg_per_mwh"),
    )
    for rate in rates:
        result = cofiring.evaluate(params, rate, interpolate_loss=args.interpolate)
        table.add(result.rate, result.mixed_fuel_cost_usd_per_tce,
                  result.fuel_cost_delta * 100.0, result.lcoe_usd_per_mwh,
                  result.lcoe_delta * 100.0, result.emission_kg_per_mwh,
                  result.emission_delta_kg_per_mwh)
    return table


def _scenario_tables(args) -> dict[str, Table]:
    params = data_io.load_bundled_params("scenarios", args.params, args.data_dir)
    supply = scenarios.SupplyAssumptions.from_mapping(params)
    demand = scenarios.DemandAssumptions.from_mapping(params)
    supply_levels = data_io.load_supply_levels(
        args.data_dir / "supply_levels.csv" if args.data_dir else None)
    demand_levels = data_io.load_demand_levels(
        args.data_dir / "demand_levels.csv" if args.data_dir else None)
    version = _dataset_version(args)

    supply_table = Table(
        f"green ammonia supply capacity by scenario level; dataset {version}",
        ("level", "renewable_share", "supply_mt"),
    )
    if getattr(args, "share", None) is not None:
        supply_table.add("custom", args.share,
                         scenarios.supply_capacity_mt(supply, args.share))
    else:
        for level in supply_levels:
            supply_table.add(level.name, level.renewable_share,
                             scenarios.supply_capacity_mt(supply, level.renewable_share))

    demand_table = Table(
        f"green ammonia demand by scenario level and sector; dataset {version}",
        ("level", "sector", "demand_mt"),
    )
    for level in demand_levels:
        breakdown = scenarios.demand_breakdown_mt(demand, level)
        for sector in scenarios.SECTORS:
            demand_table.add(level.name, sector, breakdown[sector])
        demand_table.add(level.name, "total", sum(breakdown.values()))

    balance_table = Table(
        f"green ammonia supply vs demand balance; dataset {version}",
        ("supply_level", "demand_level", "supply_mt", "demand_mt",
         "coverage", "covered"),
    )
    for row in scenarios.balance_report(supply, demand, supply_levels, demand_levels):
        balance_table.add(row.supply_level, row.demand_level, row.supply_mt,
                          row.demand_mt, row.coverage, row.covered)
    return {"supply": supply_table, "demand": demand_table, "balance": balance_table}


def _report(args) -> None:
    output_dir = Path(args.output)
    version_args = args

    gtfp_table = _gtfp_table(args)

    params = _carrier_params(args)
    version = _dataset_version(version_args)
    by_volume = Table(
        f"delivery cost by volume at 500 km; dataset {version}",
        ("medium", "volume_kt", "distance_km", "days", "stage", "usd_per_kg"),
    )
    _delivery_rows(params, by_volume, DELIVERY_VOLUMES_KT, (500.0,))
    by_distance = Table(
        f"delivery cost by distance at 50 and 100 kt/yr; dataset {version}",
        ("medium", "volume_kt", "distance_km", "days", "stage", "usd_per_kg"),
    )
    _delivery_rows(params, by_distance, (50.0, 100.0), DELIVERY_DISTANCES_KM)

    storage_args = argparse.Namespace(params=args.params, data_dir=args.data_dir,
                                      volume=(100.0,), days=STORAGE_DAYS)
    storage_table = _storage_table(storage_args)

    cofire_args = argparse.Namespace(params=args.params, data_dir=args.data_dir,
                                     rate=None, all=True, interpolate=False)
    cofire_table = _cofire_table(cofire_args)

    scenario_args = argparse.Namespace(params=args.params, data_dir=args.data_dir,
                                       share=None)
    scenario_tables = _scenario_tables(scenario_args)

    outputs = {
        "regional_efficiency": gtfp_table,
        "delivery_by_volume": by_volume,
        "delivery_by_distance": by_distance,
        "storage_by_duration": storage_table,
        "cofiring_ladder": cofire_table,
        "scenario_supply": scenario_tables["supply"],
        "scenario_demand": scenario_tables["demand"],
        "supply_demand_balance": scenario_tables["balance"],
    }
    extension = "json" if args.format == "json" else "csv"
    output_dir.mkdir(parents=True, exist_ok=True)
    for name, table in outputs.items():
        (output_dir / f"{name}.{extension}").write_text(
            table.render(args.format), encoding="utf-8")


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated number list, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nh3econ",
        description="Green-ammonia techno-economic analyses over the bundled datasets.",
    )
    parser.add_argument("--data-dir", type=Path, default=None,
                        help="dataset directory (default: bundled, or NH3ECON_DATA)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, params_help="parameter override file (key,value,unit,provenance)"):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default=None, help="output file (default: stdout)")
        p.add_argument("--params", default=None, help=params_help)

    p_gtfp = sub.add_parser("gtfp", help="regional efficiency scores and intensities")
    add_common(p_gtfp)
    p_gtfp.add_argument("--regions", default=None, help="regions table (CSV)")

    p_carrier = sub.add_parser("carrier", help="hydrogen carrier chain costs")
    carrier_sub = p_carrier.add_subparsers(dest="carrier_command", required=True)
    p_delivery = carrier_sub.add_parser("delivery", help="delivery cost sweeps")
    add_common(p_delivery)
    p_delivery.add_argument("--volume", type=_float_list,
                            default=DELIVERY_VOLUMES_KT, help="kt H2 per year, comma list")
    p_delivery.add_argument("--distance", type=_float_list,
                            default=DELIVERY_DISTANCES_KM, help="km, comma list")
    p_storage = carrier_sub.add_parser("storage", help="storage cost sweeps")
    add_common(p_storage)
    p_storage.add_argument("--volume", type=_float_list, default=(100.0,),
                           help="kt H2 per year, comma list")
    p_storage.add_argument("--days", type=_float_list, default=STORAGE_DAYS,
                           help="storage duration in days, comma list")

    p_cofire = sub.add_parser("cofire", help="co-firing cost and emission ladder")
    add_common(p_cofire)
    p_cofire.add_argument("--rate", type=float, default=None,
                          help="single co-firing rate, e.g. 0.03")
    p_cofire.add_argument("--all", action="store_true",
                          help="evaluate the whole standard ladder")
    p_cofire.add_argument("--interpolate", action="store_true",
                          help="linearly interpolate efficiency loss between tabulated rates")

    p_scenario = sub.add_parser("scenario", help="2030 supply/demand scenarios")
    scenario_sub = p_scenario.add_subparsers(dest="scenario_command", required=True)
    for name in ("supply", "demand", "balance"):
        p = scenario_sub.add_parser(name)
        add_common(p)
        if name == "supply":
            p.add_argument("--share", type=float, default=None,
                           help="custom renewable-generation share")

    p_report = sub.add_parser("report", help="write every analysis table to a directory")
    p_report.add_argument("--format", choices=("csv", "json"), default="csv")
    p_report.add_argument("--output", required=True, help="output directory")
    p_report.add_argument("--params", default=None)
    p_report.add_argument("--regions", default=None)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gtfp":
            _emit(_gtfp_table(args), args.format, args.output)
        elif args.command == "carrier":
            if args.carrier_command == "delivery":
                _emit(_delivery_table(args), args.format, args.output)
            else:
                _emit(_storage_table(args), args.format, args.output)
        elif args.command == "cofire":
            _emit(_cofire_table(args), args.format, args.output)
        elif args.command == "scenario":
            tables = _scenario_tables(args)
            _emit(tables[args.scenario_command], args.format, args.output)
        elif args.command == "report":
            _report(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3
    return 0


def main() -> None:
    sys.exit(run())
