"""Bundled parameter datasets: loading, validation, provenance, overrides.

All datasets are plain UTF-8 comma-delimited text with a mandatory header
row, '#' comment lines, '.' decimal points and no thousands separators.
Every parameter row carries a provenance label so the numbers stay
auditable; back-solved constants are additionally listed in the
calibration ledger together with the recipe that produced them.

Loaders keep the raw cell text, so re-serializing a loaded dataset
reproduces the file byte for byte.
"""

from __future__ import annotations

import hashlib
import os
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .gtfp import RegionRecord
from .scenarios import DemandLevel, SupplyLevel

ENV_DATA_DIR = "NH3ECON_DATA"

REGION_COLUMNS = ("region", "energy_mtce", "labour_m", "capital_busd",
                  "co2_mt", "gdp_busd")
PARAM_COLUMNS = ("key", "value", "unit", "provenance")

_BRACKETS = (10, 30, 50, 100)

CARRIER_SCHEMA: dict[str, str] = {
    "wacc": "fraction",
    "lifetime_years": "yr",
    "fixed_opex_rate": "fraction_per_yr",
    "electricity_usd_per_mwh": "USD_per_MWh",
    "nh3_plant_capex_usd_per_t": "USD_per_t_yr",
    "nh3_synthesis_energy_mwh_per_t": "MWh_per_t",
    "nh3_synthesis_conversion": "fraction",
    "nh3_reform_energy_mwh_per_t": "MWh_per_t",
    "nh3_reform_conversion": "fraction",
    "nh3_cooling_energy_mwh_per_t": "MWh_per_t",
    "nh3_storage_energy_kwh_per_t_day": "kWh_per_t_day",
    "nh3_vessel_capex_usd_per_t": "USD_per_t",
    "nh3_boiloff_per_day": "fraction_per_day",
    **{f"reformer_capex_{b}kt": "USD_per_t_yr" for b in _BRACKETS},
    "truck_capex_usd": "USD",
    "truck_payload_t": "t",
    "truck_daily_range_km": "km_per_day",
    "truck_opex_rate": "fraction_per_yr",
    "delivery_buffer_days": "days",
    **{f"liquefier_capex_{b}kt": "USD_per_t_yr" for b in _BRACKETS},
    "lh2_liquefaction_energy_mwh_per_t": "MWh_per_t",
    "lh2_regas_energy_kwh_per_t": "kWh_per_t",
    "lh2_boiloff_per_day": "fraction_per_day",
    "lh2_density_t_per_m3": "t_per_m3",
    "lh2_truck_tank_m3": "m3",
    "cryo_tank_capex_usd_per_m3": "USD_per_m3",
    "vaporizer_capex_kusd_per_10kt": "kUSD_per_10kt_yr",
    **{f"pipeline_capex_kusd_per_km_{b}kt": "kUSD_per_km" for b in _BRACKETS},
    "pipeline_energy_mwh_per_t_100km": "MWh_per_t_100km",
    "pipeline_leakage_per_1000km": "fraction_per_1000km",
    "stored_share": "fraction",
}

COFIRING_SCHEMA: dict[str, str] = {
    "coal_price_usd_per_tce": "USD_per_tce",
    "coal_price_min_usd_per_tce": "USD_per_tce",
    "coal_price_max_usd_per_tce": "USD_per_tce",
    "lng_price_min_usd_per_tce": "USD_per_tce",
    "lng_price_max_usd_per_tce": "USD_per_tce",
    "gas_reference_price_usd_per_tce": "USD_per_tce",
    "ammonia_production_cost_usd_per_t": "USD_per_t",
    "gross_margin": "fraction",
    "lhv_nh3_gj_per_t": "GJ_per_t",
    "lhv_coal_kcal_per_kg": "kcal_per_kg",
    "coal_consumption_tce_per_mwh": "tce_per_MWh",
    "base_emission_kg_per_mwh": "kgCO2_per_MWh",
    "fuel_cost_share": "fraction",
    "efficiency_loss_3pct": "fraction",
    "efficiency_loss_5pct": "fraction",
    "efficiency_loss_10pct": "fraction",
    "efficiency_loss_15pct": "fraction",
    "efficiency_loss_20pct": "fraction",
}

SCENARIO_SCHEMA: dict[str, str] = {
    "wind_gw": "GW",
    "solar_gw": "GW",
    "wind_hours": "h_per_yr",
    "solar_hours": "h_per_yr",
    "thermal_gw": "GW",
    "coal_share": "fraction",
    "coal_hours": "h_per_yr",
    "coal_consumption_tce_per_mwh": "tce_per_MWh",
    "conventional_ammonia_mt": "Mt",
    "shipping_fuel_mt": "Mt",
    "electrolyser_efficiency": "fraction",
    "synthesis_conversion": "fraction",
    "hrs_count": "count",
    "hrs_capacity_kg_per_day": "kg_per_day",
}

GAPFILL_SCHEMA: dict[str, str] = {
    "national_co2_2014_mt": "Mt",
    "national_co2_2019_mt": "Mt",
    "tibet_co2_2014_mt": "Mt",
}

SCHEMAS: dict[str, dict[str, str]] = {
    "carriers": CARRIER_SCHEMA,
    "cofiring": COFIRING_SCHEMA,
    "scenarios": SCENARIO_SCHEMA,
    "gapfill": GAPFILL_SCHEMA,
}

NAMESPACE_FILES: dict[str, str] = {
    "carriers": "carriers.csv",
    "cofiring": "cofiring.csv",
    "scenarios": "scenarios.csv",
    "gapfill": "gapfill.csv",
}


def data_dir() -> Path:
    """Bundled data directory, overridable via the environment."""
    override = os.environ.get(ENV_DATA_DIR)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


@dataclass(frozen=True)
class _Table:
    """Raw parsed file: comment lines, header cells, row cells."""

    path: Path
    comments: tuple[str, ...]
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    row_lines: tuple[int, ...]

    def serialize(self) -> str:
        lines = list(self.comments)
        lines.append(",".join(self.header))
        lines.extend(",".join(row) for row in self.rows)
        return "\n".join(lines) + "\n"


def _read_table(path: Path | str) -> _Table:
    path = Path(path)
    if not path.exists():
        raise InputError(f"dataset file not found: {path}")
    text = path.read_text(encoding="utf-8")
    comments: list[str] = []
    header: tuple[str, ...] | None = None
    rows: list[tuple[str, ...]] = []
    row_lines: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            if header is None:
                comments.append(line)
            continue
        cells = tuple(cell.strip() for cell in line.split(","))
        if header is None:
            header = cells
        else:
            rows.append(cells)
            row_lines.append(lineno)
    if header is None:
        raise InputError(f"{path}: no header row found")
    return _Table(path, tuple(comments), header, tuple(rows), tuple(row_lines))


def _parse_float(cell: str, path: Path, lineno: int, column: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise InputError(
            f"{path}: line {lineno}, column {column!r}: "
            f"cannot parse {cell!r} as a number") from None


@dataclass(frozen=True)
class ParamEntry:
    key: str
    value: float
    raw_value: str
    unit: str
    provenance: str


class ParameterSet(Mapping):
    """Namespaced key -> (value, unit, provenance), loaded from one file.

    Behaves as a read-only mapping from key to float value.
    """

    def __init__(self, namespace: str, entries: dict[str, ParamEntry],
                 table: _Table | None = None, version: str = ""):
        self.namespace = namespace
        self._entries = dict(entries)
        self._table = table
        self.version = version

    def __getitem__(self, key: str) -> float:
        try:
            return self._entries[key].value
        except KeyError:
            raise InputError(
                f"parameter set {self.namespace!r} has no key {key!r}") from None

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def entry(self, key: str) -> ParamEntry:
        try:
            return self._entries[key]
        except KeyError:
            raise InputError(
                f"parameter set {self.namespace!r} has no key {key!r}") from None

    def require(self, keys) -> None:
        missing = sorted(k for k in keys if k not in self._entries)
        if missing:
            raise InputError(
                f"parameter set {self.namespace!r} is missing keys: "
                + ", ".join(missing))

    def rows(self) -> list[tuple[str, float, str, str]]:
        """Effective entries as (key, value, unit, provenance) rows."""
        return [(e.key, e.value, e.unit, e.provenance)
                for e in self._entries.values()]

    def with_overrides(self, other: "ParameterSet") -> "ParameterSet":
        """New set where `other`'s entries replace or extend this one's."""
        merged = dict(self._entries)
        merged.update(other._entries)
        return ParameterSet(self.namespace, merged, None, self.version)

    def serialize(self) -> str:
        if self._table is None:
            raise InputError("only directly loaded parameter sets serialize")
        return self._table.serialize()


def load_params(path: Path | str, namespace: str,
                schema: dict[str, str] | None = None) -> ParameterSet:
    """Load a key/value/unit/provenance file and validate it.

    With a schema, every schema key must be present with the expected unit
    label; missing keys are reported together. Duplicate keys and empty
    provenance are rejected.
    """
    table = _read_table(path)
    if table.header != PARAM_COLUMNS:
        raise InputError(
            f"{table.path}: expected header {','.join(PARAM_COLUMNS)}, "
            f"got {','.join(table.header)}")
    entries: dict[str, ParamEntry] = {}
    for cells, lineno in zip(table.rows, table.row_lines):
        if len(cells) != len(PARAM_COLUMNS):
            raise InputError(
                f"{table.path}: line {lineno}: expected "
                f"{len(PARAM_COLUMNS)} cells, got {len(cells)}")
        key, raw_value, unit, provenance = cells
        if key in entries:
            raise InputError(f"{table.path}: line {lineno}: duplicate key {key!r}")
        if not provenance:
            raise InputError(f"{table.path}: line {lineno}: empty provenance for {key!r}")
        value = _parse_float(raw_value, table.path, lineno, "value")
        if schema and key in schema and unit != schema[key]:
            raise InputError(
                f"{table.path}: line {lineno}: key {key!r} has unit {unit!r}, "
                f"schema expects {schema[key]!r}")
        entries[key] = ParamEntry(key, value, raw_value, unit, provenance)
    if schema:
        missing = sorted(set(schema) - set(entries))
        if missing:
            raise InputError(
                f"{table.path}: missing required keys: " + ", ".join(missing))
    return ParameterSet(namespace, entries, table)


def load_bundled_params(namespace: str, override_path: Path | str | None = None,
                        directory: Path | None = None) -> ParameterSet:
    """Bundled parameters for a namespace, optionally layered with a user
    override file (override values win). The returned set carries the
    dataset version from the manifest when one is present."""
    if namespace not in NAMESPACE_FILES:
        raise InputError(f"unknown parameter namespace {namespace!r}")
    base_dir = directory or data_dir()
    params = load_params(base_dir / NAMESPACE_FILES[namespace], namespace,
                         SCHEMAS[namespace])
    try:
        params.version = load_manifest(base_dir, verify=False).version
    except InputError:
        pass   # datasets without a manifest stay unversioned
    if override_path is not None:
        overrides = load_params(override_path, namespace)
        params = params.with_overrides(overrides)
    return params


def load_regions(path: Path | str) -> list[RegionRecord]:
    """Regional input/output records, validated strictly positive."""
    table = _read_table(path)
    if table.header != REGION_COLUMNS:
        raise InputError(
            f"{table.path}: expected header {','.join(REGION_COLUMNS)}, "
            f"got {','.join(table.header)}")
    if not table.rows:
        raise InputError(f"{table.path}: no records")
    records = []
    for cells, lineno in zip(table.rows, table.row_lines):
        if len(cells) != len(REGION_COLUMNS):
            raise InputError(
                f"{table.path}: line {lineno}: expected "
                f"{len(REGION_COLUMNS)} cells, got {len(cells)}")
        name = cells[0]
        values = {}
        for column, cell in zip(REGION_COLUMNS[1:], cells[1:]):
            value = _parse_float(cell, table.path, lineno, column)
            if value <= 0:
                raise InputError(
                    f"{table.path}: line {lineno} (region {name!r}), column "
                    f"{column!r}: value must be positive, got {cell}")
            values[column] = value
        records.append(RegionRecord(name=name, **values))
    return records


def bundled_regions_path(directory: Path | None = None) -> Path:
    return (directory or data_dir()) / "regions_2019.csv"


def load_supply_levels(path: Path | str | None = None) -> list[SupplyLevel]:
    table = _read_table(path or data_dir() / "supply_levels.csv")
    if table.header != ("level", "renewable_share"):
        raise InputError(f"{table.path}: unexpected header")
    return [SupplyLevel(name=row[0],
                        renewable_share=_parse_float(row[1], table.path, ln, "renewable_share"))
            for row, ln in zip(table.rows, table.row_lines)]


def load_demand_levels(path: Path | str | None = None) -> list[DemandLevel]:
    table = _read_table(path or data_dir() / "demand_levels.csv")
    expected = ("level", "pr_ammonia", "pr_power", "pr_shipping", "pr_mobility")
    if table.header != expected:
        raise InputError(f"{table.path}: unexpected header")
    levels = []
    for row, ln in zip(table.rows, table.row_lines):
        values = [_parse_float(cell, table.path, ln, col)
                  for col, cell in zip(expected[1:], row[1:])]
        levels.append(DemandLevel(row[0], *values))
    return levels


@dataclass(frozen=True)
class CalibrationEntry:
    """A back-solved constant and the recipe that reproduces it."""

    constant: str
    value: float
    unit: str
    oracle: str


def calibration_ledger(directory: Path | None = None) -> list[CalibrationEntry]:
    """Every derived constant shipped with the data, with its derivation."""
    table = _read_table((directory or data_dir()) / "calibration.csv")
    if table.header != ("constant", "value", "unit", "oracle"):
        raise InputError(f"{table.path}: unexpected header")
    return [CalibrationEntry(row[0], _parse_float(row[1], table.path, ln, "value"),
                             row[2], row[3])
            for row, ln in zip(table.rows, table.row_lines)]


@dataclass(frozen=True)
class DatasetManifest:
    """File list with content digests plus the calibration ledger."""

    version: str
    files: dict[str, str]    # filename -> sha256
    calibration: tuple[CalibrationEntry, ...]


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def load_manifest(directory: Path | None = None, verify: bool = True) -> DatasetManifest:
    """Read manifest.csv and (by default) verify every file digest."""
    base_dir = directory or data_dir()
    table = _read_table(base_dir / "manifest.csv")
    if table.header != ("file", "sha256"):
        raise InputError(f"{table.path}: unexpected header")
    version = ""
    for comment in table.comments:
        text = comment.lstrip("# ").strip()
        if text.startswith("version:"):
            version = text.split(":", 1)[1].strip()
    files = {row[0]: row[1] for row in table.rows}
    if verify:
        for name, digest in files.items():
            actual = _sha256(base_dir / name)
            if actual != digest:
                raise InputError(
                    f"dataset file {name!r} digest mismatch: manifest has "
                    f"{digest[:12]}..., file has {actual[:12]}...")
    return DatasetManifest(version, files, tuple(calibration_ledger(base_dir)))


def check_completeness(directory: Path | None = None) -> dict[str, list[str]]:
    """Missing keys per namespace across every consuming module; all lists
    are empty for a healthy dataset."""
    missing: dict[str, list[str]] = {}
    for namespace, schema in SCHEMAS.items():
        try:
            params = load_bundled_params(namespace, directory=directory)
            missing[namespace] = sorted(set(schema) - set(params))
        except InputError as exc:
            missing[namespace] = [f"(load failed: {exc})"]
    return missing
