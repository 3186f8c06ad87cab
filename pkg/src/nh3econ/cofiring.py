"""Coal/ammonia co-firing economics: blended fuel cost, generation cost,
and emission intensity as functions of the co-firing rate.

The blend is an energy-weighted mix, so fuel prices are compared per tce.
Generation cost splits into a fuel part, which scales with the blended
fuel price and the unit's (slightly degraded) fuel consumption, and a
non-fuel part held constant at its share of the coal-only baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import InputError
from .units import TCE_GJ

# Co-firing rates of the standard scenario ladder (base case plus five cases).
STANDARD_RATES = (0.0, 0.03, 0.05, 0.10, 0.15, 0.20)

DEFAULT_EFFICIENCY_LOSS = {0.03: 0.01, 0.05: 0.02, 0.10: 0.03, 0.15: 0.04, 0.20: 0.06}


@dataclass(frozen=True)
class CofiringParams:
    """Parameter bundle for the co-firing cost and emission model."""

    coal_price_usd_per_tce: float
    ammonia_production_cost_usd_per_t: float = 820.0
    gross_margin: float = 0.05
    lhv_nh3_gj_per_t: float = 18.6
    coal_consumption_tce_per_mwh: float = 0.31
    base_emission_kg_per_mwh: float = 838.0
    fuel_cost_share: float = 0.70
    efficiency_loss: dict[float, float] = field(
        default_factory=lambda: dict(DEFAULT_EFFICIENCY_LOSS))

    def __post_init__(self):
        for name in ("coal_price_usd_per_tce", "ammonia_production_cost_usd_per_t",
                     "lhv_nh3_gj_per_t", "coal_consumption_tce_per_mwh",
                     "base_emission_kg_per_mwh"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be positive")
        if not 0.0 < self.fuel_cost_share < 1.0:
            raise InputError("fuel_cost_share must be in (0, 1)")
        if self.gross_margin < 0:
            raise InputError("gross_margin must be nonnegative")
        for rate, loss in self.efficiency_loss.items():
            if not 0.0 <= loss < 1.0:
                raise InputError(f"efficiency loss at rate {rate} must be in [0, 1)")

    @classmethod
    def from_mapping(cls, params: Mapping[str, float]) -> "CofiringParams":
        """Build the bundle from a loaded parameter set."""
        loss = {rate: params[f"efficiency_loss_{int(rate * 100)}pct"]
                for rate in STANDARD_RATES if rate > 0}
        return cls(
            coal_price_usd_per_tce=params["coal_price_usd_per_tce"],
            ammonia_production_cost_usd_per_t=params["ammonia_production_cost_usd_per_t"],
            gross_margin=params["gross_margin"],
            lhv_nh3_gj_per_t=params["lhv_nh3_gj_per_t"],
            coal_consumption_tce_per_mwh=params["coal_consumption_tce_per_mwh"],
            base_emission_kg_per_mwh=params["base_emission_kg_per_mwh"],
            fuel_cost_share=params["fuel_cost_share"],
            efficiency_loss=loss,
        )


@dataclass(frozen=True)
class CofiringResult:
    """Costs and emission intensity at one co-firing rate, with deltas
    against the coal-only base case."""

    rate: float
    mixed_fuel_cost_usd_per_tce: float
    lcoe_usd_per_mwh: float
    emission_kg_per_mwh: float
    fuel_cost_delta: float          # relative change vs rate 0
    lcoe_delta: float               # relative change vs rate 0
    emission_delta_kg_per_mwh: float  # absolute change vs rate 0 (negative)


def ammonia_fuel_price_per_tce(params: CofiringParams) -> float:
    """Green ammonia price per tce: (production cost + margin) / energy density."""
    tce_per_t = params.lhv_nh3_gj_per_t / TCE_GJ
    return params.ammonia_production_cost_usd_per_t * (1.0 + params.gross_margin) / tce_per_t


def _check_rate(rate: float) -> None:
    if not 0.0 <= rate <= 1.0:
        raise InputError(f"co-firing rate must be in [0, 1], got {rate}")


def mixed_fuel_cost(params: CofiringParams, rate: float) -> float:
    """Energy-weighted blend price in USD/tce, linear in the rate."""
    _check_rate(rate)
    fe_am = ammonia_fuel_price_per_tce(params)
    return fe_am * rate + params.coal_price_usd_per_tce * (1.0 - rate)


def _efficiency_loss(params: CofiringParams, rate: float, interpolate: bool) -> float:
    if rate == 0.0:
        return 0.0
    if rate in params.efficiency_loss:
        return params.efficiency_loss[rate]
    if not interpolate:
        known = ", ".join(f"{r:g}" for r in sorted(params.efficiency_loss))
        raise InputError(
            f"no efficiency-loss entry for rate {rate:g}; known rates: 0, {known} "
            f"(pass interpolate_loss=True for linear interpolation)"
        )
    points = sorted([(0.0, 0.0), *params.efficiency_loss.items()])
    rates = [p[0] for p in points]
    if rate > rates[-1]:
        raise InputError(f"rate {rate:g} is above the tabulated range")
    for (r0, l0), (r1, l1) in zip(points, points[1:]):
        if r0 <= rate <= r1:
            return l0 + (l1 - l0) * (rate - r0) / (r1 - r0)
    raise InputError(f"rate {rate:g} is outside the tabulated range")


def base_lcoe(params: CofiringParams) -> float:
    """Coal-only generation cost implied by the fuel-cost share."""
    return (params.coal_consumption_tce_per_mwh * params.coal_price_usd_per_tce
            / params.fuel_cost_share)


def cofired_lcoe(params: CofiringParams, rate: float,
                 interpolate_loss: bool = False) -> float:
    """Generation cost at a given rate, USD/MWh.

    Fuel consumption rises with the blend's efficiency loss; the non-fuel
    part stays at its baseline share. The loss applies to fuel use only,
    not to the emission balance.
    """
    _check_rate(rate)
    loss = _efficiency_loss(params, rate, interpolate_loss)
    fc_m = params.coal_consumption_tce_per_mwh / (1.0 - loss)
    fe_m = mixed_fuel_cost(params, rate)
    return fc_m * fe_m + (1.0 - params.fuel_cost_share) * base_lcoe(params)


def emission_intensity(params: CofiringParams, rate: float) -> float:
    """Stack CO2 per MWh: the ammonia share burns carbon-free."""
    _check_rate(rate)
    return params.base_emission_kg_per_mwh * (1.0 - rate)


def evaluate(params: CofiringParams, rate: float,
             interpolate_loss: bool = False) -> CofiringResult:
    """All co-firing metrics at one rate, with deltas against rate 0."""
    fe_m = mixed_fuel_cost(params, rate)
    lcoe_m = cofired_lcoe(params, rate, interpolate_loss)
    emission = emission_intensity(params, rate)
    fe_base = params.coal_price_usd_per_tce
    lcoe_base = base_lcoe(params)
    return CofiringResult(
        rate=rate,
        mixed_fuel_cost_usd_per_tce=fe_m,
        lcoe_usd_per_mwh=lcoe_m,
        emission_kg_per_mwh=emission,
        fuel_cost_delta=fe_m / fe_base - 1.0,
        lcoe_delta=lcoe_m / lcoe_base - 1.0,
        emission_delta_kg_per_mwh=emission - params.base_emission_kg_per_mwh,
    )


def scenario_table(params: CofiringParams,
                   rates: tuple[float, ...] = STANDARD_RATES) -> list[CofiringResult]:
    """Evaluate the scenario ladder (default: the six standard rates)."""
    return [evaluate(params, rate) for rate in rates]
