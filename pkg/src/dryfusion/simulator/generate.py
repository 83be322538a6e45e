"""Synthetic dataset generation: records, images, manifest.

The default experiment design mirrors the mimicked campaign's shape: a
3 x 2 grid of (temperature, velocity), two final-MC targets, and per cell
one single-slice run plus three two-slice runs, giving 84 slice records
across 48 runs. Each run's drying time is solved so the run's mean
noiseless MC hits its target, the way an operator watching the scale would
stop the dryer; slices dried together share run_id, conditions and time.

Generation is deterministic for a fixed seed and embarrassingly parallel
across runs: every run draws from its own substream seeded by
(seed, run_index), so serial and parallel generation agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
from PIL import Image
from pydantic import BaseModel, Field

from ..domain import (
    DryingConditions,
    DryingRecord,
    SliceSample,
    compute_final_mc,
    final_weight_for_target_mc,
)
from ..manifest import ManifestRow, record_to_row, write_manifest
from ..utils import dataset_hash
from .kinetics import KineticsParams, simulate_final_mc, solve_drying_time
from .render import RenderedSlice, RenderSpec, render_slice_image


class VariabilityParams(BaseModel, frozen=True):
    """Spread of sample-to-sample and sensor noise in the synthetic data."""

    thickness_cv: float = Field(default=0.10, ge=0.0)
    weight_cv: float = Field(default=0.04, ge=0.0)
    diameter_cv: float = Field(default=0.04, ge=0.0)
    initial_mc_sd: float = Field(default=0.004, ge=0.0)
    pixel_noise_sd: float = Field(default=3.0, ge=0.0)
    browning_noise_sd: float = Field(default=0.03, ge=0.0)
    process_noise_sd: float = Field(default=0.06, ge=0.0)


class NominalSample(BaseModel, frozen=True):
    """Median fresh-slice geometry the variability draws scatter around."""

    thickness_mm: float = Field(default=3.0, gt=0.0)
    diameter_mm: float = Field(default=70.0, gt=0.0)
    core_diameter_mm: float = Field(default=25.0, ge=0.0)
    initial_mc: float = Field(default=0.85, gt=0.0, lt=1.0)
    flesh_density_g_cm3: float = Field(default=0.80, gt=0.0)


class ExperimentDesign(BaseModel, frozen=True):
    """Grid of drying conditions and per-cell run counts."""

    temperatures_c: tuple[float, ...] = (60.0, 70.0, 80.0)
    air_velocities_mps: tuple[float, ...] = (1.5, 2.5)
    target_mcs: tuple[float, ...] = (0.10, 0.20)
    single_slice_runs: int = Field(default=1, ge=0)
    double_slice_runs: int = Field(default=3, ge=0)

    def cells(self) -> list[tuple[float, float, float]]:
        return [
            (t, v, m)
            for t in sorted(self.temperatures_c)
            for v in sorted(self.air_velocities_mps)
            for m in sorted(self.target_mcs)
        ]

    def runs_per_cell(self) -> list[int]:
        """Slice counts of the runs in one cell, singles first."""
        return [1] * self.single_slice_runs + [2] * self.double_slice_runs

    def total_records(self) -> int:
        return len(self.cells()) * sum(self.runs_per_cell())


@dataclass
class GeneratedDataset:
    """In-memory result of one generation, plus disk artifacts if written."""

    records: list[DryingRecord]
    rendered: dict[str, RenderedSlice]
    rows: list[ManifestRow]
    manifest_path: Optional[Path] = None
    hash: Optional[str] = None
    images: dict[str, np.ndarray] = field(default_factory=dict)


def _draw_sample(
    rng: np.random.Generator,
    nominal: NominalSample,
    variability: VariabilityParams,
    sample_id: str,
    run_id: str,
) -> SliceSample:
    thickness = nominal.thickness_mm * float(
        np.exp(rng.normal(0.0, variability.thickness_cv))
    )
    diameter = nominal.diameter_mm * float(
        np.exp(rng.normal(0.0, variability.diameter_cv))
    )
    mc0 = float(
        np.clip(
            rng.normal(nominal.initial_mc, variability.initial_mc_sd), 0.60, 0.95
        )
    )
    annulus_area_mm2 = np.pi * (
        (diameter / 2.0) ** 2 - (nominal.core_diameter_mm / 2.0) ** 2
    )
    volume_cm3 = annulus_area_mm2 * thickness / 1000.0
    weight = (
        volume_cm3
        * nominal.flesh_density_g_cm3
        * float(np.exp(rng.normal(0.0, variability.weight_cv)))
    )
    # final_weight is a placeholder until the drying outcome is simulated
    return SliceSample(
        sample_id=sample_id,
        run_id=run_id,
        initial_weight_g=weight,
        final_weight_g=weight,
        initial_mc=mc0,
        thickness_mm=thickness,
        diameter_mm=diameter,
    )


def generate_dataset(
    design: ExperimentDesign,
    kinetics: KineticsParams,
    variability: VariabilityParams,
    render_spec: RenderSpec,
    nominal: NominalSample,
    seed: int,
    out_dir: Optional[Path] = None,
) -> GeneratedDataset:
    """Generate records and slice images; optionally persist them.

    When ``out_dir`` is given, writes ``manifest.csv`` plus one lossless PNG
    per slice under ``images/`` and computes the dataset hash.
    """
    records: list[DryingRecord] = []
    rows: list[ManifestRow] = []
    rendered: dict[str, RenderedSlice] = {}
    images: dict[str, np.ndarray] = {}

    run_index = 0
    for t_c, velocity, target in design.cells():
        label = f"t{t_c:g}-v{velocity:g}-m{round(target * 100):02d}"
        for slice_count in design.runs_per_cell():
            rng = np.random.default_rng((seed, run_index))
            run_id = f"run{run_index:03d}-{label}"
            samples = [
                _draw_sample(rng, nominal, variability, f"{run_id}-s{i}", run_id)
                for i in range(slice_count)
            ]
            drying_time = solve_drying_time(
                kinetics,
                t_c,
                velocity,
                target,
                [s.initial_mc for s in samples],
                [s.thickness_mm for s in samples],
            )
            conditions = DryingConditions(t_c, velocity, drying_time)
            for sample in samples:
                mc = simulate_final_mc(
                    conditions,
                    sample,
                    kinetics,
                    rng,
                    process_noise_sd=variability.process_noise_sd,
                )
                final_weight = final_weight_for_target_mc(
                    sample.initial_weight_g, sample.initial_mc, mc
                )
                sample = SliceSample(
                    sample_id=sample.sample_id,
                    run_id=sample.run_id,
                    initial_weight_g=sample.initial_weight_g,
                    final_weight_g=final_weight,
                    initial_mc=sample.initial_mc,
                    thickness_mm=sample.thickness_mm,
                    diameter_mm=sample.diameter_mm,
                )
                ground_truth = compute_final_mc(sample)
                image, truth = render_slice_image(
                    sample,
                    ground_truth,
                    conditions,
                    render_spec,
                    rng,
                    pixel_noise_sd=variability.pixel_noise_sd,
                    browning_noise_sd=variability.browning_noise_sd,
                )
                image_path = f"images/{sample.sample_id}.png"
                record = DryingRecord(
                    conditions=conditions,
                    sample=sample,
                    image_ref=image_path,
                    ground_truth_mc=ground_truth,
                )
                records.append(record)
                rows.append(record_to_row(record, slice_count, image_path))
                rendered[sample.sample_id] = truth
                images[sample.sample_id] = image.pixels
            run_index += 1

    dataset = GeneratedDataset(
        records=records, rendered=rendered, rows=rows, images=images
    )
    if out_dir is not None:
        out_dir = Path(out_dir)
        (out_dir / "images").mkdir(parents=True, exist_ok=True)
        for sample_id, pixels in images.items():
            Image.fromarray(pixels).save(out_dir / "images" / f"{sample_id}.png")
        manifest_path = out_dir / "manifest.csv"
        write_manifest(rows, manifest_path)
        dataset.manifest_path = manifest_path
        dataset.hash = dataset_hash(manifest_path)
        dataset.records = [
            r.with_image(str(out_dir / r.image_ref)) for r in records
        ]
    return dataset


def image_signal_r2(
    records: list[DryingRecord],
    features: dict[str, np.ndarray],
) -> float:
    """Within-run R^2 of ground-truth MC on (mean RGB, area) image features.

    Groups records by run, centers target and features inside each multi-
    slice run, pools the centered rows and fits ordinary least squares.
    This measures exactly the information the tabular branch cannot carry:
    whatever separates slices dried together. NaN when no run has two
    slices or there is no within-run variance.
    """
    by_run: dict[str, list[DryingRecord]] = {}
    for record in records:
        by_run.setdefault(record.sample.run_id, []).append(record)

    centered_x: list[np.ndarray] = []
    centered_y: list[float] = []
    for run_records in by_run.values():
        if len(run_records) < 2:
            continue
        x = np.stack([features[r.sample.sample_id] for r in run_records])
        y = np.array([r.ground_truth_mc for r in run_records])
        centered_x.append(x - x.mean(axis=0))
        centered_y.extend(y - y.mean())
    if not centered_x:
        return float("nan")
    x_all = np.vstack(centered_x)
    y_all = np.asarray(centered_y)
    ss_tot = float((y_all**2).sum())
    if ss_tot <= 0.0:
        return float("nan")
    coef, *_ = np.linalg.lstsq(x_all, y_all, rcond=None)
    residual = y_all - x_all @ coef
    return 1.0 - float((residual**2).sum()) / ss_tot
