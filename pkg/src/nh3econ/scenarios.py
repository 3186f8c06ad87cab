"""2030 green-ammonia supply capacity and sectoral demand model.

Supply converts a share of projected wind and solar generation into
ammonia through electrolysis and synthesis. Demand aggregates four
sectors, each linear in its penetration rate: conventional ammonia
substitution, coal-power co-firing, shipping fuel substitution on an
energy-equivalent basis, and fuel-cell mobility served through hydrogen
refilling stations with ammonia as the carrier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import InputError
from .units import (
    H2_HHV_GJ_PER_T,
    H2_LHV_GJ_PER_T,
    HEATING_OIL_LHV_GJ_PER_T,
    MWH_GJ,
    NH3_LHV_GJ_PER_T,
    NH3_T_PER_T_H2,
    TCE_GJ,
)

SECTORS = ("power", "ammonia", "shipping", "mobility")


@dataclass(frozen=True)
class SupplyAssumptions:
    """Renewable build-out and conversion-chain efficiencies for 2030."""

    wind_gw: float = 780.0
    solar_gw: float = 840.0
    wind_hours: float = 2246.0
    solar_hours: float = 1163.0
    electrolyser_efficiency: float = 0.70
    synthesis_conversion: float = 0.95
    # Electrolysis accounting basis for the hydrogen energy content. The
    # higher heating value is the default: it reproduces the model's
    # renewable-share anchors, whereas an LHV basis understates demand.
    h2_energy_basis: str = "hhv"

    def __post_init__(self):
        for name in ("wind_gw", "solar_gw", "wind_hours", "solar_hours"):
            if getattr(self, name) < 0:
                raise InputError(f"{name} must be nonnegative")
        for name in ("electrolyser_efficiency", "synthesis_conversion"):
            if not 0.0 < getattr(self, name) <= 1.0:
                raise InputError(f"{name} must be in (0, 1]")
        if self.h2_energy_basis not in ("hhv", "lhv"):
            raise InputError("h2_energy_basis must be 'hhv' or 'lhv'")

    @property
    def electricity_mwh_per_t_nh3(self) -> float:
        """Electrolysis power demand per tonne of ammonia produced."""
        h2_gj_per_t = H2_HHV_GJ_PER_T if self.h2_energy_basis == "hhv" else H2_LHV_GJ_PER_T
        mwh_per_t_h2 = (h2_gj_per_t / MWH_GJ) / self.electrolyser_efficiency
        t_h2_per_t_nh3 = (1.0 / NH3_T_PER_T_H2) / self.synthesis_conversion
        return mwh_per_t_h2 * t_h2_per_t_nh3

    @classmethod
    def from_mapping(cls, params: Mapping[str, float]) -> "SupplyAssumptions":
        return cls(
            wind_gw=params["wind_gw"], solar_gw=params["solar_gw"],
            wind_hours=params["wind_hours"], solar_hours=params["solar_hours"],
            electrolyser_efficiency=params["electrolyser_efficiency"],
            synthesis_conversion=params["synthesis_conversion"],
        )


@dataclass(frozen=True)
class DemandAssumptions:
    """Sector baselines that the penetration rates act on."""

    conventional_ammonia_mt: float = 52.0
    shipping_fuel_mt: float = 20.0
    thermal_gw: float = 1450.0
    coal_share: float = 0.87
    coal_hours: float = 4000.0
    coal_consumption_tce_per_mwh: float = 0.31
    hrs_count: float = 1000.0
    hrs_capacity_kg_per_day: float = 1000.0

    def __post_init__(self):
        for name in ("conventional_ammonia_mt", "shipping_fuel_mt", "thermal_gw",
                     "coal_hours", "coal_consumption_tce_per_mwh",
                     "hrs_count", "hrs_capacity_kg_per_day"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be positive")
        if not 0.0 < self.coal_share <= 1.0:
            raise InputError("coal_share must be in (0, 1]")

    @classmethod
    def from_mapping(cls, params: Mapping[str, float]) -> "DemandAssumptions":
        return cls(
            conventional_ammonia_mt=params["conventional_ammonia_mt"],
            shipping_fuel_mt=params["shipping_fuel_mt"],
            thermal_gw=params["thermal_gw"], coal_share=params["coal_share"],
            coal_hours=params["coal_hours"],
            coal_consumption_tce_per_mwh=params["coal_consumption_tce_per_mwh"],
            hrs_count=params["hrs_count"],
            hrs_capacity_kg_per_day=params["hrs_capacity_kg_per_day"],
        )


@dataclass(frozen=True)
class SupplyLevel:
    name: str
    renewable_share: float

    def __post_init__(self):
        if not 0.0 <= self.renewable_share <= 1.0:
            raise InputError(f"supply level {self.name!r}: share must be in [0, 1]")


@dataclass(frozen=True)
class DemandLevel:
    name: str
    pr_ammonia: float
    pr_power: float
    pr_shipping: float
    pr_mobility: float

    def __post_init__(self):
        for field_name in ("pr_ammonia", "pr_power", "pr_shipping", "pr_mobility"):
            value = getattr(self, field_name)
            if not 0.0 <= value <= 1.0:
                raise InputError(
                    f"demand level {self.name!r}: {field_name} must be in [0, 1]")


def _check_share(value: float, name: str) -> None:
    if not 0.0 <= value <= 1.0:
        raise InputError(f"{name} must be in [0, 1], got {value}")


def renewable_generation_twh(s: SupplyAssumptions) -> float:
    """Annual wind plus solar generation: capacity times use hours."""
    return (s.wind_gw * s.wind_hours + s.solar_gw * s.solar_hours) / 1e3


def supply_capacity_mt(s: SupplyAssumptions, renewable_share: float) -> float:
    """Ammonia output if a share of renewable generation feeds electrolysis."""
    _check_share(renewable_share, "renewable_share")
    generation_mwh = renewable_generation_twh(s) * 1e6
    return generation_mwh * renewable_share / s.electricity_mwh_per_t_nh3 / 1e6


def required_renewable_share(s: SupplyAssumptions, demand_mt: float) -> float:
    """Inverse of supply_capacity_mt: generation share needed for a demand."""
    if demand_mt < 0:
        raise InputError("demand must be nonnegative")
    generation_mwh = renewable_generation_twh(s) * 1e6
    return demand_mt * 1e6 * s.electricity_mwh_per_t_nh3 / generation_mwh


def power_sector_demand_mt(d: DemandAssumptions, cofire_rate: float) -> float:
    """Ammonia for co-firing a share of coal-power fuel, energy-equivalent."""
    _check_share(cofire_rate, "cofire_rate")
    coal_generation_mwh = d.thermal_gw * 1e3 * d.coal_share * d.coal_hours
    fuel_energy_gj = coal_generation_mwh * d.coal_consumption_tce_per_mwh * TCE_GJ
    return cofire_rate * fuel_energy_gj / NH3_LHV_GJ_PER_T / 1e6


def shipping_demand_mt(d: DemandAssumptions, pr: float) -> float:
    """Ammonia replacing a share of shipping heating oil, energy-equivalent."""
    _check_share(pr, "pr")
    oil_energy_gj = d.shipping_fuel_mt * 1e6 * HEATING_OIL_LHV_GJ_PER_T
    return pr * oil_energy_gj / NH3_LHV_GJ_PER_T / 1e6


def mobility_demand_mt(d: DemandAssumptions, ur_hrs: float, tr_am: float = 1.0) -> float:
    """Ammonia carrying the hydrogen dispensed by refilling stations.

    The sector's penetration is the product of the station utilization rate
    and the share of station hydrogen arriving as ammonia; pass the
    already-multiplied penetration as ur_hrs with tr_am left at 1.
    """
    _check_share(ur_hrs, "ur_hrs")
    _check_share(tr_am, "tr_am")
    h2_t_per_year = d.hrs_count * d.hrs_capacity_kg_per_day * 365.0 / 1e3
    return ur_hrs * tr_am * h2_t_per_year * NH3_T_PER_T_H2 / 1e6


def ammonia_sector_demand_mt(d: DemandAssumptions, pr: float) -> float:
    """Green substitution of conventional ammonia output."""
    _check_share(pr, "pr")
    return pr * d.conventional_ammonia_mt


def demand_breakdown_mt(d: DemandAssumptions, level: DemandLevel) -> dict[str, float]:
    """Per-sector demand at one level, keyed by sector name."""
    return {
        "power": power_sector_demand_mt(d, level.pr_power),
        "ammonia": ammonia_sector_demand_mt(d, level.pr_ammonia),
        "shipping": shipping_demand_mt(d, level.pr_shipping),
        "mobility": mobility_demand_mt(d, level.pr_mobility),
    }


@dataclass(frozen=True)
class BalanceRow:
    """One supply-level / demand-level pairing of the balance table."""

    supply_level: str
    demand_level: str
    supply_mt: float
    demand_mt: float
    coverage: float
    covered: bool


def balance_report(s: SupplyAssumptions, d: DemandAssumptions,
                   supply_levels: list[SupplyLevel],
                   demand_levels: list[DemandLevel]) -> list[BalanceRow]:
    """Cross every supply level with every demand level."""
    rows = []
    for sl in supply_levels:
        supply = supply_capacity_mt(s, sl.renewable_share)
        for dl in demand_levels:
            demand = sum(demand_breakdown_mt(d, dl).values())
            coverage = supply / demand if demand > 0 else float("inf")
            rows.append(BalanceRow(
                supply_level=sl.name,
                demand_level=dl.name,
                supply_mt=supply,
                demand_mt=demand,
                coverage=coverage,
                covered=supply >= demand,
            ))
    return rows
