"""Masked-image transforms: model-ready tensors and simplified features."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from PIL import Image

from .types import TENSOR_SIZE, PipelineStageError, SliceImage, Stage


@dataclass(frozen=True)
class SimpleImageFeatures:
    """Low-dimensional image summary: per-channel means over the mask and
    the mask's pixel area."""

    mean_r: float
    mean_g: float
    mean_b: float
    area_px: int

    def as_array(self) -> np.ndarray:
        return np.array([self.mean_r, self.mean_g, self.mean_b, self.area_px])


def _require_valid_mask(image: SliceImage) -> np.ndarray:
    image.require_stage(Stage.MASKED)
    problems = image.violations()
    if problems:
        raise PipelineStageError("; ".join(problems))
    return image.mask


def to_model_tensor(image: SliceImage) -> SliceImage:
    """Crop to the mask, pad square, resize bilinearly to 224 x 224, zero
    everything outside the mask, and scale intensities to [0, 1]."""
    mask = _require_valid_mask(image)
    rows = np.nonzero(mask.any(axis=1))[0]
    cols = np.nonzero(mask.any(axis=0))[0]
    r0, r1 = int(rows[0]), int(rows[-1]) + 1
    c0, c1 = int(cols[0]), int(cols[-1]) + 1

    crop = image.pixels[r0:r1, c0:c1]
    mask_crop = mask[r0:r1, c0:c1]

    h, w = crop.shape[:2]
    side = max(h, w)
    pad_top = (side - h) // 2
    pad_left = (side - w) // 2
    padded = np.zeros((side, side, 3), dtype=np.uint8)
    padded[pad_top : pad_top + h, pad_left : pad_left + w] = crop
    mask_padded = np.zeros((side, side), dtype=np.uint8)
    mask_padded[pad_top : pad_top + h, pad_left : pad_left + w] = (
        mask_crop.astype(np.uint8) * 255
    )

    size = (TENSOR_SIZE, TENSOR_SIZE)
    resized = np.asarray(
        Image.fromarray(padded).resize(size, Image.BILINEAR), dtype=np.float32
    )
    mask_resized = (
        np.asarray(
            Image.fromarray(mask_padded).resize(size, Image.BILINEAR), dtype=np.float32
        )
        >= 127.5
    )
    tensor = resized / 255.0
    tensor[~mask_resized] = 0.0
    return SliceImage(
        pixels=tensor, stage=Stage.TENSOR, mask=mask_resized, sample_id=image.sample_id
    )


def extract_simple_features(image: SliceImage) -> SimpleImageFeatures:
    """Channel means over mask pixels plus the mask area."""
    mask = _require_valid_mask(image)
    values = image.pixels[mask].astype(np.float64)
    means = values.mean(axis=0)
    return SimpleImageFeatures(
        mean_r=float(means[0]),
        mean_g=float(means[1]),
        mean_b=float(means[2]),
        area_px=int(mask.sum()),
    )
