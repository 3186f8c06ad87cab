"""Regional green productivity: CRS input-oriented DEA plus intensity metrics.

Each region is a decision-making unit with four inputs (energy use, labour
force, capital stock, CO2 emission) and one output (GDP). Its efficiency
score is the optimum of a small linear program: shrink the region's input
bundle by a common factor theta while a nonnegative combination of all
regions still dominates it. The frontier regions score exactly 1.

Energy and carbon intensities are simple ratios of the same table; the
energy intensity is reported in kBtu/USD (dividing the raw units gives
thousands of Btu per dollar, not Btu as sometimes labelled).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lp
from .errors import InputError, SolverError
from .units import Quantity, convert

EFFICIENT_TOL = 1e-6
DEFAULT_DEPRECIATION = 0.096

_INPUT_FIELDS = ("energy_mtce", "labour_m", "capital_busd", "co2_mt")


@dataclass(frozen=True)
class RegionRecord:
    """One region's annual inputs and output for the efficiency model."""

    name: str
    energy_mtce: float
    labour_m: float
    capital_busd: float
    co2_mt: float
    gdp_busd: float

    def __post_init__(self):
        for field_name in (*_INPUT_FIELDS, "gdp_busd"):
            value = getattr(self, field_name)
            if not value > 0:
                raise InputError(
                    f"region {self.name!r}: {field_name} must be strictly "
                    f"positive, got {value}"
                )

    @property
    def inputs(self) -> np.ndarray:
        return np.array([getattr(self, f) for f in _INPUT_FIELDS])


@dataclass(frozen=True)
class RegionEfficiency:
    """Scored row: efficiency in (0, 1], intensities per dollar of GDP."""

    name: str
    gtfp: float
    energy_intensity_kbtu_per_usd: float
    carbon_intensity_kg_per_usd: float
    efficient: bool


def build_dea_lp(records: list[RegionRecord], i: int) -> lp.LinearProgram:
    """LP for region i: min theta over (theta, lambda_1..lambda_M).

    Input rows demand sum_j lambda_j X_jk <= theta X_ik for each input k,
    the output row demands sum_j lambda_j Y_j >= Y_i, and all variables are
    nonnegative. No explicit theta <= 1 row is needed: lambda = e_i is
    feasible with theta = 1, so the optimum never exceeds 1.
    """
    if not records:
        raise InputError("at least one region record is required")
    if not 0 <= i < len(records):
        raise InputError(f"region index {i} out of range for {len(records)} records")
    m = len(records)
    x = np.array([r.inputs for r in records])          # m regions x 4 inputs
    y = np.array([r.gdp_busd for r in records])
    n_inputs = x.shape[1]

    c = np.zeros(1 + m)
    c[0] = 1.0
    a_ub = np.zeros((n_inputs + 1, 1 + m))
    b_ub = np.zeros(n_inputs + 1)
    for k in range(n_inputs):
        a_ub[k, 0] = -x[i, k]
        a_ub[k, 1:] = x[:, k]
    a_ub[n_inputs, 1:] = -y
    b_ub[n_inputs] = -y[i]
    return lp.LinearProgram(c=c, a_ub=a_ub, b_ub=b_ub)


def dea_score(records: list[RegionRecord], i: int, tol: float = lp.DEFAULT_TOL) -> float:
    """Efficiency score theta for one region."""
    solution = lp.solve(build_dea_lp(records, i), tol=tol)
    if not solution.is_optimal:
        raise SolverError(
            f"DEA program for region {records[i].name!r} ended "
            f"{solution.status.value}"
        )
    return float(solution.x[0])


def intensities(record: RegionRecord) -> tuple[float, float]:
    """(energy intensity kBtu/USD, carbon intensity kg CO2/USD)."""
    if record.gdp_busd <= 0:
        raise InputError(f"region {record.name!r}: GDP must be positive")
    energy_kbtu = convert(Quantity(record.energy_mtce * 1e6, "tce"), "kBtu").value
    gdp_usd = convert(Quantity(record.gdp_busd, "B_USD"), "USD").value
    co2_kg = convert(Quantity(record.co2_mt, "Mt"), "kg").value
    return energy_kbtu / gdp_usd, co2_kg / gdp_usd


def gtfp_scores(records: list[RegionRecord], tol: float = lp.DEFAULT_TOL) -> list[RegionEfficiency]:
    """Score every region and attach its intensity metrics."""
    report = []
    for i, record in enumerate(records):
        try:
            theta = dea_score(records, i, tol=tol)
        except SolverError as exc:
            raise SolverError(f"region {record.name!r}: {exc}") from exc
        ei, ci = intensities(record)
        report.append(RegionEfficiency(
            name=record.name,
            gtfp=theta,
            energy_intensity_kbtu_per_usd=ei,
            carbon_intensity_kg_per_usd=ci,
            efficient=theta >= 1.0 - EFFICIENT_TOL,
        ))
    return report


def capital_stock_next(k_now_busd: float, investment_next_busd: float,
                       delta: float = DEFAULT_DEPRECIATION) -> float:
    """Perpetual-inventory step: K_{n+1} = I_{n+1} + (1 - delta) K_n."""
    if not 0.0 <= delta < 1.0:
        raise InputError(f"depreciation rate must be in [0, 1), got {delta}")
    if k_now_busd < 0 or investment_next_busd < 0:
        raise InputError("capital stock and investment must be nonnegative")
    return investment_next_busd + (1.0 - delta) * k_now_busd


def extrapolate_emission(base_value_mt: float, cagr: float, years: int) -> float:
    """Compound a base emission level forward: base * (1 + cagr)^years."""
    if base_value_mt <= 0:
        raise InputError("base emission must be positive")
    if years < 0:
        raise InputError("years must be nonnegative")
    return base_value_mt * (1.0 + cagr) ** years


def series_cagr(start_value: float, end_value: float, years: int) -> float:
    """Annual average growth rate between two points `years` apart."""
    if start_value <= 0 or end_value <= 0:
        raise InputError("series values must be positive")
    if years <= 0:
        raise InputError("years must be positive")
    return (end_value / start_value) ** (1.0 / years) - 1.0


def gap_fill_emission_2019(gapfill_params) -> float:
    """Estimate the missing provincial 2019 CO2 level (Mt).

    The provincial inventory lacks Tibet after 2014, so its 2019 level is
    extrapolated from the 2014 value with the 2014-2019 national average
    growth rate. Takes the bundled gap-fill parameter mapping.
    """
    cagr = series_cagr(gapfill_params["national_co2_2014_mt"],
                       gapfill_params["national_co2_2019_mt"], 5)
    return extrapolate_emission(gapfill_params["tibet_co2_2014_mt"], cagr, 5)
