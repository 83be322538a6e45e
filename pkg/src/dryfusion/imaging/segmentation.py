"""Per-slice mask extraction behind a pluggable segmenter interface.

The default segmenter is classical: distance from the background color,
morphological closing, connected components, an area floor, and core-hole
filling. A learned masker can be dropped in by implementing
:class:`Segmenter`; the rest of the pipeline only sees boolean masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Protocol, Sequence, runtime_checkable

import numpy as np
from scipy import ndimage

from .types import SliceImage, Stage


class SegmentationEmpty(RuntimeError):
    """No component above the area floor was found."""


class SegmentationAmbiguous(RuntimeError):
    """More slices detected than the run is known to contain."""


@runtime_checkable
class Segmenter(Protocol):
    """Produces >= 0 disjoint boolean slice masks for one image."""

    name: str

    def segment(self, image: SliceImage) -> list[np.ndarray]: ...


@dataclass(frozen=True)
class ThresholdSegmenter:
    """Background-distance threshold segmenter.

    ``background_rgb=None`` estimates the background as the median color of
    the image border. Components smaller than ``min_area_px`` are dropped;
    holes (the core) are filled so each mask is the slice's full footprint.
    """

    color_distance_threshold: float = 60.0
    min_area_px: int = 400
    closing_iterations: int = 2
    background_rgb: Optional[tuple[float, float, float]] = None
    border_px: int = 4

    name: str = "background-threshold"

    def _background(self, pixels: np.ndarray) -> np.ndarray:
        if self.background_rgb is not None:
            return np.asarray(self.background_rgb, dtype=np.float64)
        b = self.border_px
        border = np.concatenate(
            [
                pixels[:b].reshape(-1, 3),
                pixels[-b:].reshape(-1, 3),
                pixels[:, :b].reshape(-1, 3),
                pixels[:, -b:].reshape(-1, 3),
            ]
        )
        return np.median(border.astype(np.float64), axis=0)

    def segment(self, image: SliceImage) -> list[np.ndarray]:
        pixels = image.pixels.astype(np.float64)
        distance = np.linalg.norm(pixels - self._background(pixels), axis=2)
        foreground = distance > self.color_distance_threshold
        if self.closing_iterations > 0:
            foreground = ndimage.binary_closing(
                foreground, iterations=self.closing_iterations
            )
        labels, count = ndimage.label(foreground)
        masks: list[np.ndarray] = []
        for index in range(1, count + 1):
            mask = labels == index
            if int(mask.sum()) < self.min_area_px:
                continue
            masks.append(ndimage.binary_fill_holes(mask))
        return masks


def _centroid_x(mask: np.ndarray) -> float:
    return float(np.nonzero(mask)[1].mean())


def segment_slices(
    image: SliceImage,
    segmenter: Optional[Segmenter] = None,
    expected_slices: Optional[int] = None,
) -> list[SliceImage]:
    """Masked images for every detected slice, ordered left to right.

    Raises:
        SegmentationEmpty: nothing passed the segmenter's area floor.
        SegmentationAmbiguous: more masks than ``expected_slices``.
    """
    image.require_stage(Stage.CALIBRATED)
    segmenter = segmenter if segmenter is not None else ThresholdSegmenter()
    masks = segmenter.segment(image)
    if not masks:
        raise SegmentationEmpty(
            f"no slice found in image {image.sample_id!r} "
            f"(segmenter {segmenter.name!r})"
        )
    if expected_slices is not None and len(masks) > expected_slices:
        raise SegmentationAmbiguous(
            f"found {len(masks)} slices in image {image.sample_id!r}, "
            f"expected at most {expected_slices}"
        )
    masks = sorted(masks, key=_centroid_x)
    ids: Sequence[Optional[str]]
    if image.sample_id and "," in image.sample_id:
        ids = image.sample_id.split(",")
        if len(ids) != len(masks):
            ids = [image.sample_id] * len(masks)
    else:
        ids = [image.sample_id] * len(masks)
    return [
        SliceImage(pixels=image.pixels, stage=Stage.MASKED, mask=mask, sample_id=sid)
        for mask, sid in zip(masks, ids)
    ]
