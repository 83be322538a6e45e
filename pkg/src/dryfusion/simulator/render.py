"""Rendering of synthetic dried-slice images with exact ground-truth masks.

Each slice is drawn as a cored annulus whose outer radius shrinks with the
mass actually lost and whose fill color browns with temperature, time and
realized moisture loss. Per-slice geometry (thickness, weight, diameter)
therefore leaves a visible fingerprint: two slices dried together differ in
size and color in a way that tracks their individual final MCs, which is
the signal the image branch of the fusion model is meant to pick up.

Rasterization is a direct distance-field test on pixel centers, so the
renderer knows its own masks and noiseless colors exactly; the segmentation
oracle and the feature tests lean on that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field, field_validator

from ..domain import DryingConditions, SliceSample, final_weight_for_target_mc
from ..imaging import SliceImage, Stage

# Low-order harmonics used for the irregular slice boundary.
_WOBBLE_HARMONICS = (2, 3, 4)


class RenderSpec(BaseModel, frozen=True):
    """Geometry, palette and browning model of the synthetic slice renderer."""

    canvas_px: int = Field(default=256, ge=256)
    background_rgb: tuple[int, int, int] = (24, 22, 20)
    base_slice_rgb: tuple[int, int, int] = (214, 182, 120)
    browning_rgb: tuple[int, int, int] = (138, 84, 36)
    core_hole_fraction: float = Field(default=0.34, ge=0.0, lt=1.0)
    shrinkage_exponent: float = Field(default=0.5, ge=0.0)
    pixels_per_mm: float = Field(default=1.55, gt=0.0)
    boundary_wobble_sd: float = Field(default=0.006, ge=0.0)
    # Browning: thermal exposure saturates over browning_time_scale_min and
    # scales with temperature; realized moisture loss adds the slice term.
    browning_time_scale_min: float = Field(default=150.0, gt=0.0)
    browning_exposure_weight: float = Field(default=0.45, ge=0.0)
    browning_moisture_weight: float = Field(default=0.55, ge=0.0)

    @field_validator("background_rgb", "base_slice_rgb", "browning_rgb")
    @classmethod
    def _valid_rgb(cls, value: tuple[int, int, int]) -> tuple[int, int, int]:
        if len(value) != 3 or any(not 0 <= c <= 255 for c in value):
            raise ValueError(f"not a valid 8-bit RGB triple: {value}")
        return value


@dataclass(frozen=True)
class RenderedSlice:
    """Ground truth attached to one rendered slice.

    ``mask`` is the filled outer disk (core hole included), matching what
    the segmentation stage is required to recover; ``mean_rgb_noiseless``
    is the exact mean of the pre-noise image over that mask.
    """

    mask: np.ndarray
    center_xy: tuple[float, float]
    outer_radius_px: float
    area_px: int
    fill_rgb: tuple[float, float, float]
    mean_rgb_noiseless: tuple[float, float, float]
    browning_index: float


def browning_index(
    conditions: DryingConditions,
    initial_mc: float,
    final_mc: float,
    spec: RenderSpec,
) -> float:
    """Browning in [0, 1]: rises with temperature, time and moisture loss."""
    temp_term = (conditions.temperature_c - 50.0) / 40.0
    time_term = 1.0 - np.exp(-conditions.drying_time_min / spec.browning_time_scale_min)
    exposure = temp_term * time_term
    loss = max(0.0, (initial_mc - final_mc) / initial_mc)
    raw = spec.browning_exposure_weight * exposure + spec.browning_moisture_weight * loss
    return float(min(max(raw, 0.0), 1.0))


def shrink_factor(sample: SliceSample, final_mc: float, spec: RenderSpec) -> float:
    """Linear shrinkage from the mass actually lost: 1 before any drying."""
    w0 = sample.initial_weight_g
    wa = final_weight_for_target_mc(w0, sample.initial_mc, final_mc)
    return float((wa / w0) ** spec.shrinkage_exponent)


def _wobble_coefficients(
    rng: Optional[np.random.Generator], sd: float
) -> tuple[np.ndarray, np.ndarray]:
    if rng is None or sd <= 0.0:
        return np.zeros(len(_WOBBLE_HARMONICS)), np.zeros(len(_WOBBLE_HARMONICS))
    amplitudes = rng.normal(0.0, sd, size=len(_WOBBLE_HARMONICS))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=len(_WOBBLE_HARMONICS))
    return amplitudes, phases


def _rasterize(
    canvas_px: int,
    center_xy: tuple[float, float],
    outer_radius_px: float,
    hole_radius_px: float,
    amplitudes: np.ndarray,
    phases: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """(filled outer mask, annulus mask) for a wobbled disk with a core hole."""
    yy, xx = np.mgrid[0:canvas_px, 0:canvas_px]
    dx = (xx + 0.5) - center_xy[0]
    dy = (yy + 0.5) - center_xy[1]
    dist = np.hypot(dx, dy)
    theta = np.arctan2(dy, dx)
    boundary = outer_radius_px * (
        1.0
        + sum(
            a * np.cos(h * theta + p)
            for a, h, p in zip(amplitudes, _WOBBLE_HARMONICS, phases)
        )
    )
    outer = dist <= boundary
    annulus = outer & (dist > hole_radius_px)
    return outer, annulus


def _render_one(
    canvas: np.ndarray,
    sample: SliceSample,
    final_mc: float,
    conditions: DryingConditions,
    spec: RenderSpec,
    rng: Optional[np.random.Generator],
    center_xy: tuple[float, float],
    browning_noise_sd: float,
) -> RenderedSlice:
    if sample.diameter_mm is None or sample.diameter_mm <= 0.0:
        raise ValueError(f"sample {sample.sample_id} has no diameter to render")
    shrink = shrink_factor(sample, final_mc, spec)
    outer_radius = 0.5 * sample.diameter_mm * spec.pixels_per_mm * shrink
    hole_radius = outer_radius * spec.core_hole_fraction

    bi = browning_index(conditions, sample.initial_mc, final_mc, spec)
    if rng is not None and browning_noise_sd > 0.0:
        bi = float(np.clip(bi * (1.0 + rng.normal(0.0, browning_noise_sd)), 0.0, 1.0))

    base = np.asarray(spec.base_slice_rgb, dtype=np.float64)
    brown = np.asarray(spec.browning_rgb, dtype=np.float64)
    background = np.asarray(spec.background_rgb, dtype=np.float64)
    fill = base + bi * (brown - base)

    amplitudes, phases = _wobble_coefficients(rng, spec.boundary_wobble_sd)
    outer, annulus = _rasterize(
        canvas.shape[0], center_xy, outer_radius, hole_radius, amplitudes, phases
    )
    canvas[annulus] = fill

    n_outer = int(outer.sum())
    n_annulus = int(annulus.sum())
    if n_outer == 0:
        raise ValueError(
            f"slice {sample.sample_id} rendered off-canvas or with zero area"
        )
    mean_rgb = (fill * n_annulus + background * (n_outer - n_annulus)) / n_outer
    return RenderedSlice(
        mask=outer,
        center_xy=center_xy,
        outer_radius_px=float(outer_radius),
        area_px=n_outer,
        fill_rgb=tuple(float(c) for c in fill),
        mean_rgb_noiseless=tuple(float(c) for c in mean_rgb),
        browning_index=bi,
    )


def render_run_image(
    samples: Sequence[SliceSample],
    final_mcs: Sequence[float],
    conditions: DryingConditions,
    spec: RenderSpec,
    rng: Optional[np.random.Generator] = None,
    pixel_noise_sd: float = 0.0,
    browning_noise_sd: float = 0.0,
) -> tuple[SliceImage, list[RenderedSlice]]:
    """Render 1-2 slices of one run side by side on a single canvas.

    Slices are placed left to right in sample order; per-pixel Gaussian
    sensor noise is added across the whole canvas after composition.
    """
    if not 1 <= len(samples) <= 2 or len(samples) != len(final_mcs):
        raise ValueError("render_run_image takes one or two samples with final MCs")
    size = spec.canvas_px
    canvas = np.tile(
        np.asarray(spec.background_rgb, dtype=np.float64), (size, size, 1)
    )
    if len(samples) == 1:
        centers = [(size / 2.0, size / 2.0)]
    else:
        centers = [(size * 0.27, size / 2.0), (size * 0.73, size / 2.0)]

    rendered: list[RenderedSlice] = []
    for sample, mc, center in zip(samples, final_mcs, centers):
        rendered.append(
            _render_one(
                canvas, sample, mc, conditions, spec, rng, center, browning_noise_sd
            )
        )
    if rng is not None and pixel_noise_sd > 0.0:
        canvas = canvas + rng.normal(0.0, pixel_noise_sd, size=canvas.shape)
    pixels = np.clip(np.rint(canvas), 0, 255).astype(np.uint8)
    ids = ",".join(s.sample_id for s in samples)
    return SliceImage(pixels=pixels, stage=Stage.RAW, sample_id=ids), rendered


def render_slice_image(
    sample: SliceSample,
    final_mc: float,
    conditions: DryingConditions,
    spec: RenderSpec,
    rng: Optional[np.random.Generator] = None,
    pixel_noise_sd: float = 0.0,
    browning_noise_sd: float = 0.0,
) -> tuple[SliceImage, RenderedSlice]:
    """Render a single slice centered on its own canvas."""
    image, rendered = render_run_image(
        [sample],
        [final_mc],
        conditions,
        spec,
        rng,
        pixel_noise_sd=pixel_noise_sd,
        browning_noise_sd=browning_noise_sd,
    )
    return image, rendered[0]
