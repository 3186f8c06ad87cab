"""Hydrogen carrier chains: levelized delivery and storage costs.

A chain moves an annual hydrogen flow through ordered stages (conversion,
transport, optional buffering, reconversion), each with its own capital
basis, fixed opex, process energy and losses. Costs are levelized over the
plant lifetime by discounting both the expense schedule and the delivered
mass, then expressed per kg of hydrogen (or hydrogen content, when the
carrier is used directly) leaving the chain.

Capital bases follow the parameter table: per tonne of annual throughput
for process plants, per vehicle for road transport (fleet sized to the
annual tonnage and route time), per km for pipelines, and per cubic metre
for cryogenic tanks. Road transport's per-km running costs (fuel, crew,
maintenance) are folded into its fixed-opex rate, which is therefore much
larger than the 3 percent used for stationary plants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import InputError
from .units import NH3_T_PER_T_H2

DEFAULT_DISCOUNT_RATE = 0.08
DEFAULT_LIFETIME_YEARS = 20
# Electricity price for process energy. Calibrated jointly with the buffer
# size and the road-transport opex rate against the delivery and storage
# cost bands; the bundled dataset carries the same value with its recipe.
DEFAULT_ELECTRICITY_USD_PER_MWH = 56.0
DEFAULT_STORED_SHARE = 0.20

CAPEX_BASES = ("per_t_per_yr", "per_asset", "per_km", "per_m3")
ROLES = ("conversion", "transport", "storage", "reconversion")
_ROLE_ORDER = {"conversion": 0, "transport": 1, "storage": 2, "reconversion": 3}

VOLUME_BRACKETS_KT = (10.0, 30.0, 50.0, 100.0)


def annuity_factor(dr: float, years: int) -> float:
    """Present value of a unit annual payment over `years` at rate `dr`."""
    if years < 1:
        raise InputError("lifetime must be at least one year")
    if dr == 0.0:
        return float(years)
    return (1.0 - (1.0 + dr) ** -years) / dr


def levelized_cost(annual_expense_schedule, annual_energy_schedule, dr: float) -> float:
    """Discounted expenses divided by discounted delivered mass.

    Schedules are indexed from year 0 and must have equal length. The
    result is independent of dr when both schedules are constant.
    """
    exp = list(annual_expense_schedule)
    energy = list(annual_energy_schedule)
    if not exp or len(exp) != len(energy):
        raise InputError("expense and energy schedules must have equal, nonzero length")
    if not any(e > 0 for e in energy):
        raise InputError("energy schedule must contain at least one positive entry")
    if not 0.0 <= dr < 1.0:
        raise InputError(f"discount rate must be in [0, 1), got {dr}")
    disc_exp = sum(v / (1.0 + dr) ** n for n, v in enumerate(exp))
    disc_energy = sum(v / (1.0 + dr) ** n for n, v in enumerate(energy))
    return disc_exp / disc_energy


@dataclass(frozen=True)
class StageSpec:
    """One stage of a carrier chain.

    energy_use_mwh_per_t applies per tonne handled, or per tonne per 100 km
    for pipeline transport. loss_rate is a fraction per day in transit or
    storage (boil-off), or per 1000 km for pipeline leakage.
    """

    name: str
    role: str
    capex_basis: str
    capex_value: float
    fixed_opex_rate: float = 0.03
    energy_use_mwh_per_t: float = 0.0
    loss_rate: float = 0.0
    conversion_efficiency: float = 1.0
    # transport sizing (per_asset basis)
    payload_t: float = 0.0
    daily_range_km: float = 0.0
    # storage sizing
    hold_days: float = 0.0
    density_t_per_m3: float = 0.0

    def __post_init__(self):
        if self.role not in ROLES:
            raise InputError(f"stage {self.name!r}: unknown role {self.role!r}")
        if self.capex_basis not in CAPEX_BASES:
            raise InputError(f"stage {self.name!r}: unknown capex basis {self.capex_basis!r}")
        if self.capex_value < 0:
            raise InputError(f"stage {self.name!r}: capex must be nonnegative")
        if not 0.0 <= self.loss_rate < 1.0:
            raise InputError(f"stage {self.name!r}: loss rate must be in [0, 1)")
        if not 0.0 < self.conversion_efficiency <= 1.0:
            raise InputError(f"stage {self.name!r}: conversion efficiency must be in (0, 1]")


@dataclass(frozen=True)
class CarrierChain:
    """Ordered stages moving hydrogen via one medium."""

    medium: str   # "NH3", "LH2" or "GH2_pipeline"
    stages: tuple[StageSpec, ...]
    include_reconversion: bool = True
    bracket_clamped: bool = False
    storage_stages: tuple[StageSpec, ...] = ()

    def __post_init__(self):
        if self.medium not in ("NH3", "LH2", "GH2_pipeline"):
            raise InputError(f"unknown carrier medium {self.medium!r}")
        last = -1
        for stage in self.stages:
            order = _ROLE_ORDER[stage.role]
            if order < last:
                raise InputError(
                    f"stage {stage.name!r} out of order: expected "
                    "conversion -> transport -> storage -> reconversion")
            last = order
            if self.medium == "GH2_pipeline" and stage.role in ("conversion", "reconversion"):
                raise InputError("pipeline chains carry gaseous hydrogen end to end")


@dataclass(frozen=True)
class CostQuery:
    """Sizing and financial context for one cost evaluation."""

    annual_h2_kt: float
    distance_km: float = 0.0
    storage_days: float = 0.0
    dr: float = DEFAULT_DISCOUNT_RATE
    lifetime_years: int = DEFAULT_LIFETIME_YEARS
    electricity_usd_per_mwh: float = DEFAULT_ELECTRICITY_USD_PER_MWH
    stored_share: float = DEFAULT_STORED_SHARE

    def __post_init__(self):
        if not self.annual_h2_kt > 0:
            raise InputError("annual hydrogen volume must be positive")
        if self.distance_km < 0:
            raise InputError("distance must be nonnegative")
        if self.storage_days < 0:
            raise InputError("storage days must be nonnegative")
        if not 0.0 < self.dr < 1.0:
            raise InputError("discount rate must be in (0, 1)")
        if not 0.0 < self.stored_share <= 1.0:
            raise InputError("stored share must be in (0, 1]")


@dataclass(frozen=True)
class StageCost:
    name: str
    role: str
    usd_per_kg: float


@dataclass(frozen=True)
class CostBreakdown:
    """Levelized cost split by stage; stage costs sum to the total."""

    stages: tuple[StageCost, ...]
    total_usd_per_kg: float
    delivered_fraction: float
    bracket_clamped: bool = False

    def stage_share(self, role: str) -> float:
        """Fraction of the total contributed by stages of one role."""
        part = sum(s.usd_per_kg for s in self.stages if s.role == role)
        return part / self.total_usd_per_kg if self.total_usd_per_kg else 0.0


def _bracket(volume_kt: float) -> tuple[float, bool]:
    """Nearest tabulated volume bracket and whether clamping occurred."""
    if volume_kt in VOLUME_BRACKETS_KT:
        return volume_kt, False
    nearest = min(VOLUME_BRACKETS_KT, key=lambda b: (abs(b - volume_kt), b))
    return nearest, True


def _param(params: Mapping[str, float], key: str) -> float:
    try:
        return float(params[key])
    except KeyError:
        raise InputError(f"missing carrier parameter {key!r}") from None


def _bracket_param(params: Mapping[str, float], stem: str,
                   volume_kt: float) -> tuple[float, bool]:
    bracket, clamped = _bracket(volume_kt)
    return _param(params, f"{stem}_{int(bracket)}kt"), clamped


@dataclass
class _StageFlow:
    """Sizing of one stage inside a concrete evaluation."""

    spec: StageSpec
    capex_usd: float
    energy_mwh_per_yr: float


def _transport_fleet(spec: StageSpec, tonnage_per_yr: float, distance_km: float) -> float:
    """Vehicles needed for an annual tonnage over a one-way distance.

    Each vehicle covers its daily range in loaded and empty legs, so it
    completes daily_range / (2 * distance) deliveries per day. Fractional
    fleets keep the levelized cost smooth in volume.
    """
    if distance_km <= 0:
        return 0.0
    deliveries_per_day = spec.daily_range_km / (2.0 * distance_km)
    per_vehicle_t = spec.payload_t * deliveries_per_day * 365.0
    return tonnage_per_yr / per_vehicle_t


def _walk_delivery(chain: CarrierChain, q: CostQuery) -> tuple[list[_StageFlow], float]:
    """Size each stage and track the medium mass; returns flows and the
    hydrogen-equivalent tonnage leaving the chain."""
    mass_t = q.annual_h2_kt * 1000.0   # current medium mass, t/yr
    medium = "H2"
    flows: list[_StageFlow] = []
    for spec in chain.stages:
        if spec.role == "conversion":
            if chain.medium == "NH3":
                out_mass = mass_t * spec.conversion_efficiency * NH3_T_PER_T_H2
                basis_mass = out_mass
                medium = "NH3"
            else:   # liquefaction keeps the hydrogen mass
                out_mass = mass_t * spec.conversion_efficiency
                basis_mass = mass_t
            capex = spec.capex_value * basis_mass
            energy = spec.energy_use_mwh_per_t * basis_mass
        elif spec.role == "transport":
            basis_mass = mass_t
            if spec.capex_basis == "per_km":
                capex = spec.capex_value * q.distance_km
                energy = spec.energy_use_mwh_per_t * basis_mass * q.distance_km / 100.0
                survival = (1.0 - spec.loss_rate) ** (q.distance_km / 1000.0)
            elif spec.capex_basis == "per_asset":
                fleet = _transport_fleet(spec, basis_mass, q.distance_km)
                capex = spec.capex_value * fleet
                energy = spec.energy_use_mwh_per_t * basis_mass
                transit_days = (q.distance_km / spec.daily_range_km
                                if spec.daily_range_km > 0 else 0.0)
                survival = (1.0 - spec.loss_rate) ** transit_days
            else:
                raise InputError(f"transport stage {spec.name!r}: unsupported "
                                 f"capex basis {spec.capex_basis!r}")
            out_mass = mass_t * survival
        elif spec.role == "storage":
            # working buffer sized in days of throughput
            capacity_t = mass_t * spec.hold_days / 365.0
            capex = spec.capex_value * capacity_t
            energy = 0.0
            out_mass = mass_t
        else:   # reconversion
            basis_mass = mass_t
            capex = spec.capex_value * basis_mass
            energy = spec.energy_use_mwh_per_t * basis_mass
            if medium == "NH3":
                out_mass = mass_t / NH3_T_PER_T_H2 * spec.conversion_efficiency
                medium = "H2"
            else:
                out_mass = mass_t * spec.conversion_efficiency
        flows.append(_StageFlow(spec, capex, energy))
        mass_t = out_mass

    h2_equiv_t = mass_t / NH3_T_PER_T_H2 if medium == "NH3" else mass_t
    return flows, h2_equiv_t


def _levelize(flows: list[_StageFlow], delivered_kg_per_yr: float,
              delivered_fraction: float, q: CostQuery,
              bracket_clamped: bool) -> CostBreakdown:
    """Apply the discounted-schedule cost rule stage by stage.

    Capital is spent in year 0; opex and energy run flat over the lifetime,
    as does the delivered mass, so every stage shares one denominator and
    the breakdown sums exactly to the total.
    """
    if delivered_kg_per_yr <= 0:
        raise InputError("chain delivers no hydrogen")
    years = q.lifetime_years
    energy_schedule = [0.0] + [delivered_kg_per_yr] * years
    stage_costs = []
    for flow in flows:
        opex = flow.capex_usd * flow.spec.fixed_opex_rate
        running = opex + flow.energy_mwh_per_yr * q.electricity_usd_per_mwh
        expenses = [flow.capex_usd] + [running] * years
        cost = levelized_cost(expenses, energy_schedule, q.dr)
        stage_costs.append(StageCost(flow.spec.name, flow.spec.role, cost))
    total = sum(s.usd_per_kg for s in stage_costs)
    return CostBreakdown(tuple(stage_costs), total, delivered_fraction,
                         bracket_clamped)


def delivery_cost(chain: CarrierChain, q: CostQuery) -> CostBreakdown:
    """Levelized cost of moving the annual volume over the query distance,
    in USD per kg of hydrogen (content) leaving the chain."""
    if chain.medium == "GH2_pipeline" and q.distance_km <= 0:
        raise InputError("pipeline delivery requires a positive distance")
    flows, h2_out_t = _walk_delivery(chain, q)
    return _levelize(flows, h2_out_t * 1000.0,
                     h2_out_t / (q.annual_h2_kt * 1000.0), q,
                     chain.bracket_clamped)


def storage_cost(chain: CarrierChain, q: CostQuery) -> CostBreakdown:
    """Levelized cost of holding the stored share for the query duration.

    The vessel is sized to the stored inventory, the medium is prepared
    once (cooling for ammonia, liquefaction for liquid hydrogen), and the
    holding load covers re-condensing boil-off gas. For liquid hydrogen the
    boil-off is lost instead, so long durations shrink the recovered mass.
    Costs are per kg of hydrogen content recovered from storage.
    """
    if q.storage_days <= 0:
        raise InputError("storage_days must be positive for storage costing")
    if not chain.storage_stages:
        raise InputError(f"{chain.medium} chain has no storage stages")

    h2_in_t = q.annual_h2_kt * 1000.0 * q.stored_share
    if chain.medium == "NH3":
        synthesis = chain.stages[0]
        stored_t = h2_in_t * synthesis.conversion_efficiency * NH3_T_PER_T_H2
    else:
        stored_t = h2_in_t

    flows: list[_StageFlow] = []
    mass_t = stored_t
    for spec in chain.storage_stages:
        if spec.role == "storage":
            if spec.capex_basis == "per_m3":
                capex = spec.capex_value * mass_t / spec.density_t_per_m3
            else:
                capex = spec.capex_value * mass_t
            if spec.energy_use_mwh_per_t > 0:
                # re-condensation duty on the boil-off stream
                boiloff_t_days = mass_t * spec.loss_rate * q.storage_days
                energy = spec.energy_use_mwh_per_t * boiloff_t_days
            else:
                # boil-off is vented: the inventory shrinks instead
                energy = 0.0
                mass_t = mass_t * (1.0 - spec.loss_rate) ** q.storage_days
        else:   # preparation before, or retrieval processing after, the hold
            capex = spec.capex_value * mass_t
            energy = spec.energy_use_mwh_per_t * mass_t
        flows.append(_StageFlow(spec, capex, energy))
    recovered_t = mass_t

    if chain.medium == "NH3":
        h2_out_t = recovered_t / NH3_T_PER_T_H2
    else:
        h2_out_t = recovered_t
    return _levelize(flows, h2_out_t * 1000.0, h2_out_t / h2_in_t, q,
                     chain.bracket_clamped)


# keys the builders read from the carriers parameter namespace
REQUIRED_KEYS = (
    "wacc",
    "lifetime_years",
    "fixed_opex_rate",
    "electricity_usd_per_mwh",
    "nh3_plant_capex_usd_per_t",
    "nh3_synthesis_energy_mwh_per_t",
    "nh3_synthesis_conversion",
    "nh3_reform_energy_mwh_per_t",
    "nh3_reform_conversion",
    "nh3_cooling_energy_mwh_per_t",
    "nh3_storage_energy_kwh_per_t_day",
    "nh3_vessel_capex_usd_per_t",
    "nh3_boiloff_per_day",
    "reformer_capex_10kt",
    "reformer_capex_30kt",
    "reformer_capex_50kt",
    "reformer_capex_100kt",
    "truck_capex_usd",
    "truck_payload_t",
    "truck_daily_range_km",
    "truck_opex_rate",
    "delivery_buffer_days",
    "liquefier_capex_10kt",
    "liquefier_capex_30kt",
    "liquefier_capex_50kt",
    "liquefier_capex_100kt",
    "lh2_liquefaction_energy_mwh_per_t",
    "lh2_regas_energy_kwh_per_t",
    "lh2_boiloff_per_day",
    "lh2_density_t_per_m3",
    "lh2_truck_tank_m3",
    "cryo_tank_capex_usd_per_m3",
    "vaporizer_capex_kusd_per_10kt",
    "pipeline_capex_kusd_per_km_10kt",
    "pipeline_capex_kusd_per_km_30kt",
    "pipeline_capex_kusd_per_km_50kt",
    "pipeline_capex_kusd_per_km_100kt",
    "pipeline_energy_mwh_per_t_100km",
    "pipeline_leakage_per_1000km",
    "stored_share",
)


def default_query(params: Mapping[str, float], annual_h2_kt: float,
                  distance_km: float = 0.0, storage_days: float = 0.0) -> CostQuery:
    """CostQuery with financial context taken from the parameter set."""
    return CostQuery(
        annual_h2_kt=annual_h2_kt,
        distance_km=distance_km,
        storage_days=storage_days,
        dr=_param(params, "wacc"),
        lifetime_years=int(_param(params, "lifetime_years")),
        electricity_usd_per_mwh=_param(params, "electricity_usd_per_mwh"),
        stored_share=_param(params, "stored_share"),
    )


def builtin_chains(params: Mapping[str, float],
                   annual_h2_kt: float) -> dict[str, CarrierChain]:
    """The four standard chains, with bracketed capex resolved for a volume.

    Volumes outside the tabulated brackets use the nearest bracket and set
    the chain's (and every resulting breakdown's) clamp flag.
    """
    if annual_h2_kt <= 0:
        raise InputError("annual hydrogen volume must be positive")
    opex = _param(params, "fixed_opex_rate")

    reformer_capex, clamped = _bracket_param(params, "reformer_capex", annual_h2_kt)
    liquefier_capex, _ = _bracket_param(params, "liquefier_capex", annual_h2_kt)
    pipeline_capex_kusd, _ = _bracket_param(params, "pipeline_capex_kusd_per_km",
                                            annual_h2_kt)

    plant = StageSpec(
        name="ammonia_plant", role="conversion", capex_basis="per_t_per_yr",
        capex_value=_param(params, "nh3_plant_capex_usd_per_t"),
        fixed_opex_rate=opex,
        energy_use_mwh_per_t=_param(params, "nh3_synthesis_energy_mwh_per_t"),
        conversion_efficiency=_param(params, "nh3_synthesis_conversion"),
    )
    nh3_truck = StageSpec(
        name="truck_transport", role="transport", capex_basis="per_asset",
        capex_value=_param(params, "truck_capex_usd"),
        fixed_opex_rate=_param(params, "truck_opex_rate"),
        loss_rate=_param(params, "nh3_boiloff_per_day"),
        payload_t=_param(params, "truck_payload_t"),
        daily_range_km=_param(params, "truck_daily_range_km"),
    )
    buffer = StageSpec(
        name="terminal_buffer", role="storage", capex_basis="per_t_per_yr",
        capex_value=_param(params, "nh3_vessel_capex_usd_per_t"),
        fixed_opex_rate=opex,
        hold_days=_param(params, "delivery_buffer_days"),
    )
    cracker = StageSpec(
        name="ammonia_cracker", role="reconversion", capex_basis="per_t_per_yr",
        capex_value=reformer_capex, fixed_opex_rate=opex,
        energy_use_mwh_per_t=_param(params, "nh3_reform_energy_mwh_per_t"),
        conversion_efficiency=_param(params, "nh3_reform_conversion"),
    )
    nh3_storage_stages = (
        StageSpec(
            name="ammonia_cooling", role="conversion", capex_basis="per_t_per_yr",
            capex_value=0.0, fixed_opex_rate=opex,
            energy_use_mwh_per_t=_param(params, "nh3_cooling_energy_mwh_per_t"),
        ),
        StageSpec(
            name="ammonia_vessel", role="storage", capex_basis="per_t_per_yr",
            capex_value=_param(params, "nh3_vessel_capex_usd_per_t"),
            fixed_opex_rate=opex,
            energy_use_mwh_per_t=_param(params, "nh3_storage_energy_kwh_per_t_day") / 1000.0,
            loss_rate=_param(params, "nh3_boiloff_per_day"),
        ),
    )

    liquefier = StageSpec(
        name="liquefier", role="conversion", capex_basis="per_t_per_yr",
        capex_value=liquefier_capex, fixed_opex_rate=opex,
        energy_use_mwh_per_t=_param(params, "lh2_liquefaction_energy_mwh_per_t"),
    )
    lh2_density = _param(params, "lh2_density_t_per_m3")
    lh2_truck = StageSpec(
        name="cryo_truck_transport", role="transport", capex_basis="per_asset",
        capex_value=(_param(params, "truck_capex_usd")
                     + _param(params, "cryo_tank_capex_usd_per_m3")
                     * _param(params, "lh2_truck_tank_m3")),
        fixed_opex_rate=_param(params, "truck_opex_rate"),
        loss_rate=_param(params, "lh2_boiloff_per_day"),
        payload_t=_param(params, "lh2_truck_tank_m3") * lh2_density,
        daily_range_km=_param(params, "truck_daily_range_km"),
    )
    vaporizer = StageSpec(
        name="vaporizer", role="reconversion", capex_basis="per_t_per_yr",
        capex_value=_param(params, "vaporizer_capex_kusd_per_10kt") * 1000.0 / 10_000.0,
        fixed_opex_rate=opex,
        energy_use_mwh_per_t=_param(params, "lh2_regas_energy_kwh_per_t") / 1000.0,
    )
    lh2_storage_stages = (
        liquefier,
        StageSpec(
            name="cryo_tank", role="storage", capex_basis="per_m3",
            capex_value=_param(params, "cryo_tank_capex_usd_per_m3"),
            fixed_opex_rate=opex,
            loss_rate=_param(params, "lh2_boiloff_per_day"),
            density_t_per_m3=lh2_density,
        ),
        vaporizer,
    )

    pipeline = StageSpec(
        name="pipeline_transport", role="transport", capex_basis="per_km",
        capex_value=pipeline_capex_kusd * 1000.0, fixed_opex_rate=opex,
        energy_use_mwh_per_t=_param(params, "pipeline_energy_mwh_per_t_100km"),
        loss_rate=_param(params, "pipeline_leakage_per_1000km"),
    )

    return {
        "NH3_with_crack": CarrierChain(
            medium="NH3", stages=(plant, nh3_truck, buffer, cracker),
            include_reconversion=True, bracket_clamped=clamped,
            storage_stages=nh3_storage_stages),
        "NH3_direct": CarrierChain(
            medium="NH3", stages=(plant, nh3_truck, buffer),
            include_reconversion=False, bracket_clamped=clamped,
            storage_stages=nh3_storage_stages),
        "LH2": CarrierChain(
            medium="LH2", stages=(liquefier, lh2_truck, vaporizer),
            include_reconversion=True, bracket_clamped=clamped,
            storage_stages=lh2_storage_stages),
        "pipeline": CarrierChain(
            medium="GH2_pipeline", stages=(pipeline,),
            include_reconversion=False, bracket_clamped=clamped),
    }
