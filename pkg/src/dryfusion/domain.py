"""Core value types and moisture-content arithmetic for drying records.

Moisture content (MC) is wet-basis everywhere: water mass divided by total
mass, a dimensionless fraction in [0, 1). Weights are grams stored as 64-bit
floats. Percent only ever appears in rendered report tables.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

# Guard against float-noise rejections when checking for negative MC; far
# below the resolution of any lab scale.
MC_EPSILON_G = 1e-9

# Exact experimental levels enforced by strict validation.
STRICT_TEMPERATURES_C = (60.0, 70.0, 80.0)
STRICT_VELOCITIES_MPS = (1.5, 2.5)
STRICT_TIME_RANGE_MIN = (70.0, 250.0)

# Generous envelopes for non-strict validation.
TEMPERATURE_RANGE_C = (50.0, 90.0)
VELOCITY_RANGE_MPS = (1.0, 3.0)
TIME_RANGE_MIN = (0.0, 400.0)


class MoistureContentError(ValueError):
    """Raised when weights/fractions cannot yield a physical moisture content."""


@dataclass(frozen=True)
class DryingConditions:
    """Process parameters of one drying run: the tabular model inputs."""

    temperature_c: float
    air_velocity_mps: float
    drying_time_min: float

    def combo(self) -> tuple[float, float]:
        """(temperature, velocity) pair identifying the condition group."""
        return (self.temperature_c, self.air_velocity_mps)


@dataclass(frozen=True)
class SliceSample:
    """One slice's identity, weights and (optionally) geometry.

    ``thickness_mm`` and ``diameter_mm`` are known only to the simulator;
    ingested lab data carries weights alone. Slices dried together in one
    run share ``run_id``.
    """

    sample_id: str
    run_id: str
    initial_weight_g: float
    final_weight_g: float
    initial_mc: float
    thickness_mm: Optional[float] = None
    diameter_mm: Optional[float] = None


@dataclass(frozen=True)
class DryingRecord:
    """A slice's conditions, weights, image reference and ground-truth MC."""

    conditions: DryingConditions
    sample: SliceSample
    image_ref: Union[str, object, None]
    ground_truth_mc: float

    def with_image(self, image_ref) -> "DryingRecord":
        return replace(self, image_ref=image_ref)


def dry_solids_g(initial_weight_g: float, initial_mc: float) -> float:
    """Mass of non-water solids, conserved throughout drying."""
    return initial_weight_g * (1.0 - initial_mc)


def compute_final_mc(sample: SliceSample) -> float:
    """Final wet-basis MC from initial/final weights and initial MC.

    The water remaining is the final weight minus the (conserved) dry
    solids; dividing by the final weight gives the wet-basis fraction.

    Raises:
        MoistureContentError: non-positive weight, initial MC outside (0, 1),
            or final weight at/below the dry-solids mass (negative MC).
    """
    w0 = sample.initial_weight_g
    wa = sample.final_weight_g
    mc0 = sample.initial_mc
    if w0 <= 0.0 or wa <= 0.0:
        raise MoistureContentError(
            f"weights must be positive (initial={w0} g, final={wa} g)"
        )
    if not 0.0 < mc0 < 1.0:
        raise MoistureContentError(f"initial MC must be in (0, 1), got {mc0}")
    solids = dry_solids_g(w0, mc0)
    if wa < solids - MC_EPSILON_G:
        raise MoistureContentError(
            f"final weight {wa} g below dry solids {solids} g: negative MC"
        )
    mc = (wa - solids) / wa
    return float(min(max(mc, 0.0), np.nextafter(1.0, 0.0)))


def final_weight_for_target_mc(w0: float, mc0: float, target_mc: float) -> float:
    """Final weight that yields ``target_mc``: the algebraic inverse of
    :func:`compute_final_mc` for fixed initial weight and MC."""
    if w0 <= 0.0:
        raise MoistureContentError(f"initial weight must be positive, got {w0} g")
    if not 0.0 < mc0 < 1.0:
        raise MoistureContentError(f"initial MC must be in (0, 1), got {mc0}")
    if not 0.0 <= target_mc < 1.0:
        raise MoistureContentError(f"target MC must be in [0, 1), got {target_mc}")
    return dry_solids_g(w0, mc0) / (1.0 - target_mc)


def validate_conditions(conditions: DryingConditions, strict: bool = False) -> list[str]:
    """Invariant violations of a conditions triple; empty list when valid."""
    violations: list[str] = []
    t, v, time = (
        conditions.temperature_c,
        conditions.air_velocity_mps,
        conditions.drying_time_min,
    )
    lo, hi = TEMPERATURE_RANGE_C
    if not lo <= t <= hi:
        violations.append(f"temperature {t} C outside [{lo}, {hi}]")
    lo, hi = VELOCITY_RANGE_MPS
    if not lo <= v <= hi:
        violations.append(f"air velocity {v} m/s outside [{lo}, {hi}]")
    lo, hi = TIME_RANGE_MIN
    if not lo < time <= hi:
        violations.append(f"drying time {time} min outside ({lo}, {hi}]")
    if strict:
        if t not in STRICT_TEMPERATURES_C:
            violations.append(
                f"temperature {t} not in {{60, 70, 80}} (strict mode)"
            )
        if v not in STRICT_VELOCITIES_MPS:
            violations.append(f"air velocity {v} not in {{1.5, 2.5}} (strict mode)")
        lo, hi = STRICT_TIME_RANGE_MIN
        if not lo <= time <= hi:
            violations.append(
                f"drying time {time} outside [{lo}, {hi}] (strict mode)"
            )
    return violations


def validate_sample(sample: SliceSample) -> list[str]:
    """Invariant violations of a slice sample; empty list when valid."""
    violations: list[str] = []
    w0, wa, mc0 = sample.initial_weight_g, sample.final_weight_g, sample.initial_mc
    if not sample.sample_id:
        violations.append("sample_id is empty")
    if not sample.run_id:
        violations.append("run_id is empty")
    if w0 <= 0.0:
        violations.append(f"initial weight {w0} g not positive")
    if wa <= 0.0:
        violations.append(f"final weight {wa} g not positive")
    if not 0.0 < mc0 < 1.0:
        violations.append(f"initial MC {mc0} outside (0, 1)")
    if wa > w0:
        violations.append(f"mass increased during drying ({w0} g -> {wa} g)")
    if w0 > 0 and wa > 0 and 0.0 < mc0 < 1.0:
        solids = dry_solids_g(w0, mc0)
        if wa <= solids - MC_EPSILON_G:
            violations.append(
                f"final weight {wa} g at or below dry solids {solids} g"
            )
    for name, value in (("thickness", sample.thickness_mm), ("diameter", sample.diameter_mm)):
        if value is not None and value <= 0.0:
            violations.append(f"{name} {value} mm not positive")
    return violations


def validate_record(record: DryingRecord, strict: bool = False) -> list[str]:
    """All invariant violations of a record; empty list means valid.

    Violations are data, not exceptions: callers decide whether to reject.
    Strict mode additionally pins conditions to the exact experimental
    levels.
    """
    violations = validate_conditions(record.conditions, strict=strict)
    violations.extend(validate_sample(record.sample))
    mc = record.ground_truth_mc
    if not 0.0 <= mc < 1.0:
        violations.append(f"ground-truth MC {mc} outside [0, 1)")
    sample_ok = not validate_sample(record.sample)
    if sample_ok:
        try:
            derived = compute_final_mc(record.sample)
        except MoistureContentError as exc:
            violations.append(f"weights inconsistent: {exc}")
        else:
            if abs(derived - mc) > 1e-9:
                violations.append(
                    f"ground-truth MC {mc} disagrees with weight-derived {derived}"
                )
    return violations
