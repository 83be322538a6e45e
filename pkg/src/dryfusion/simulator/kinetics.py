"""Thin-layer drying kinetics used to synthesize final moisture contents.

A Page-type law drives the moisture ratio, MR = exp(-k * t^n), with the
rate constant

    k = a * exp(-Ea_R / T_kelvin) * v^b * (thickness / ref_thickness)^(-c)

so dried moisture falls with time, temperature and air velocity and rises
with slice thickness. MR interpolates dry-basis moisture between its
initial and equilibrium values, which is then converted back to wet basis.
The default constants were fitted offline by least squares so the slowest
condition corner reaches ~10% wet-basis MC at 250 min and ~20% around 165
min (see scripts/calibrate_kinetics.py); they are frozen in
``configs/default.yaml``.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from ..domain import DryingConditions, SliceSample

CELSIUS_TO_KELVIN = 273.15

# Hard bracket for run-time solving, minutes.
TIME_BRACKET_MIN = (1.0, 400.0)


class KineticsError(ValueError):
    """Raised for unphysical kinetics inputs or unsolvable drying times."""


class KineticsParams(BaseModel, frozen=True):
    """Parameters of the synthetic thin-layer drying law."""

    pre_exponential: float = Field(gt=0.0, description="a, 1/min^n")
    activation_temperature_k: float = Field(ge=0.0, description="Ea/R, kelvin")
    velocity_exponent: float = Field(ge=0.0, description="b")
    page_exponent: float = Field(gt=0.5, le=2.0, description="n")
    thickness_exponent: float = Field(ge=0.0, description="c")
    equilibrium_mc: float = Field(ge=0.0, lt=0.1, description="wet-basis fraction")
    reference_thickness_mm: float = Field(default=3.0, gt=0.0)


def wet_to_dry_basis(mc_wet: float) -> float:
    """Wet-basis fraction -> dry-basis moisture (water per unit solids)."""
    if not 0.0 <= mc_wet < 1.0:
        raise KineticsError(f"wet-basis MC must be in [0, 1), got {mc_wet}")
    return mc_wet / (1.0 - mc_wet)


def dry_to_wet_basis(mc_dry: float) -> float:
    """Dry-basis moisture -> wet-basis fraction."""
    if mc_dry < 0.0:
        raise KineticsError(f"dry-basis moisture must be >= 0, got {mc_dry}")
    return mc_dry / (1.0 + mc_dry)


def rate_constant(
    params: KineticsParams,
    temperature_c: float,
    air_velocity_mps: float,
    thickness_mm: Optional[float] = None,
) -> float:
    """Page rate constant k for one condition/slice combination."""
    t_kelvin = temperature_c + CELSIUS_TO_KELVIN
    if t_kelvin <= 0.0:
        raise KineticsError(f"temperature {temperature_c} C below absolute zero")
    if air_velocity_mps <= 0.0:
        raise KineticsError(f"air velocity must be positive, got {air_velocity_mps}")
    thickness = params.reference_thickness_mm if thickness_mm is None else thickness_mm
    if thickness <= 0.0:
        raise KineticsError(f"thickness must be positive, got {thickness}")
    k = (
        params.pre_exponential
        * np.exp(-params.activation_temperature_k / t_kelvin)
        * air_velocity_mps**params.velocity_exponent
        * (thickness / params.reference_thickness_mm) ** (-params.thickness_exponent)
    )
    return float(k)


def moisture_ratio(k: float, drying_time_min: float, page_exponent: float) -> float:
    """Normalized remaining removable moisture: 1 at t=0, -> 0 as t grows."""
    if drying_time_min <= 0.0:
        raise KineticsError(f"drying time must be positive, got {drying_time_min}")
    return float(np.exp(-k * drying_time_min**page_exponent))


def predicted_final_mc(
    params: KineticsParams,
    conditions: DryingConditions,
    initial_mc: float,
    thickness_mm: Optional[float] = None,
    k_scale: float = 1.0,
) -> float:
    """Noiseless kinetics core: wet-basis MC after drying under ``conditions``.

    ``k_scale`` multiplies the rate constant; the stochastic simulation
    passes a lognormal draw here, everything else uses the default 1.
    """
    k = rate_constant(
        params, conditions.temperature_c, conditions.air_velocity_mps, thickness_mm
    )
    mr = moisture_ratio(k * k_scale, conditions.drying_time_min, params.page_exponent)
    x0 = wet_to_dry_basis(initial_mc)
    xe = wet_to_dry_basis(params.equilibrium_mc)
    x = xe + (x0 - xe) * mr
    return dry_to_wet_basis(x)


def simulate_final_mc(
    conditions: DryingConditions,
    sample: SliceSample,
    params: KineticsParams,
    rng: np.random.Generator,
    process_noise_sd: float = 0.0,
) -> float:
    """Stochastic final MC for one slice.

    Applies multiplicative lognormal noise to the rate constant, which is
    how run-to-run process variability enters the synthetic data; the
    returned MC is otherwise the noiseless core evaluated at the slice's
    own thickness.
    """
    if process_noise_sd < 0.0:
        raise KineticsError(f"noise sd must be >= 0, got {process_noise_sd}")
    k_scale = 1.0
    if process_noise_sd > 0.0:
        k_scale = float(np.exp(rng.normal(0.0, process_noise_sd)))
    return predicted_final_mc(
        params, conditions, sample.initial_mc, sample.thickness_mm, k_scale=k_scale
    )


def solve_drying_time(
    params: KineticsParams,
    temperature_c: float,
    air_velocity_mps: float,
    target_mc: float,
    initial_mcs: Sequence[float],
    thicknesses_mm: Sequence[Optional[float]],
    tolerance_min: float = 1e-6,
) -> float:
    """Drying time at which the run's mean noiseless MC hits ``target_mc``.

    Mirrors the stop-by-scale protocol: a run (1-2 slices) is dried until
    the mean moisture reaches the target level. Bisection on the strictly
    decreasing noiseless core within the hard bracket.

    Raises:
        KineticsError: target not bracketed within [1, 400] minutes.
    """
    if len(initial_mcs) != len(thicknesses_mm) or not initial_mcs:
        raise KineticsError("need matching, non-empty initial MCs and thicknesses")

    def mean_mc(t: float) -> float:
        cond = DryingConditions(temperature_c, air_velocity_mps, t)
        values = [
            predicted_final_mc(params, cond, mc0, th)
            for mc0, th in zip(initial_mcs, thicknesses_mm)
        ]
        return float(np.mean(values))

    lo, hi = TIME_BRACKET_MIN
    mc_lo, mc_hi = mean_mc(lo), mean_mc(hi)
    # MC decreases with time, so mc_lo is the wettest achievable end state.
    if not mc_hi <= target_mc <= mc_lo:
        raise KineticsError(
            f"target MC {target_mc} not bracketed in [{lo}, {hi}] min "
            f"(range [{mc_hi:.4f}, {mc_lo:.4f}]) at "
            f"T={temperature_c} C, v={air_velocity_mps} m/s"
        )
    while hi - lo > tolerance_min:
        mid = 0.5 * (lo + hi)
        if mean_mc(mid) > target_mc:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
