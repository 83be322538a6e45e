"""Per-record preprocessing: raw image file -> model-ready feature bundle."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from PIL import Image
from pydantic import BaseModel, Field

from ..domain import DryingRecord
from ..imaging import (
    SliceImage,
    Stage,
    Segmenter,
    ThresholdSegmenter,
    calibrate_color,
    extract_simple_features,
    segment_slices,
    to_model_tensor,
)

# Rec. 601 luma weights for reducing mean RGB to one gray scalar.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


class SegmentationSettings(BaseModel, frozen=True):
    color_distance_threshold: float = Field(default=60.0, gt=0.0)
    min_area_px: int = Field(default=400, ge=1)
    closing_iterations: int = Field(default=2, ge=0)


class ImagingSettings(BaseModel, frozen=True):
    """Knobs of the image preprocessing pipeline."""

    source_cct_k: float = 5000.0
    target_cct_k: float = 6500.0
    segmentation: SegmentationSettings = SegmentationSettings()
    rgb_reduction: str = "luminance"  # or "per_channel"

    def segmenter(self) -> Segmenter:
        return ThresholdSegmenter(
            color_distance_threshold=self.segmentation.color_distance_threshold,
            min_area_px=self.segmentation.min_area_px,
            closing_iterations=self.segmentation.closing_iterations,
        )


@dataclass(frozen=True)
class FeatureBundle:
    """Model inputs for one record.

    ``tabular`` is the raw (T, v, t) triple; standardization happens per
    training fold. ``image_chw`` is the 224 x 224 x 3 tensor in channel-
    first layout. ``simple`` is (mean_r, mean_g, mean_b, area_px).
    """

    sample_id: str
    tabular: np.ndarray
    image_chw: np.ndarray
    simple: np.ndarray

    def luminance(self) -> float:
        return float(np.dot(self.simple[:3], LUMA_WEIGHTS))


def load_raw_image(record: DryingRecord) -> SliceImage:
    """Resolve a record's image reference to a raw SliceImage."""
    ref = record.image_ref
    if isinstance(ref, SliceImage):
        return ref
    if isinstance(ref, (str, Path)):
        pixels = np.asarray(Image.open(ref).convert("RGB"), dtype=np.uint8)
        return SliceImage(
            pixels=pixels, stage=Stage.RAW, sample_id=record.sample.sample_id
        )
    raise ValueError(
        f"record {record.sample.sample_id} has no usable image reference: {ref!r}"
    )


def preprocess_record(
    record: DryingRecord, settings: Optional[ImagingSettings] = None
) -> FeatureBundle:
    """Calibrate, segment (expecting a single slice), tensorize, summarize."""
    settings = settings or ImagingSettings()
    raw = load_raw_image(record)
    calibrated = calibrate_color(raw, settings.source_cct_k, settings.target_cct_k)
    masked = segment_slices(calibrated, settings.segmenter(), expected_slices=1)[0]
    tensor = to_model_tensor(masked)
    simple = extract_simple_features(masked)
    conditions = record.conditions
    return FeatureBundle(
        sample_id=record.sample.sample_id,
        tabular=np.array(
            [
                conditions.temperature_c,
                conditions.air_velocity_mps,
                conditions.drying_time_min,
            ]
        ),
        image_chw=np.ascontiguousarray(
            tensor.pixels.transpose(2, 0, 1), dtype=np.float32
        ),
        simple=simple.as_array(),
    )


def preprocess_records(
    records: list[DryingRecord], settings: Optional[ImagingSettings] = None
) -> dict[str, FeatureBundle]:
    return {
        record.sample.sample_id: preprocess_record(record, settings)
        for record in records
    }
