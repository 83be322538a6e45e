"""Image container passed through the preprocessing pipeline."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

TENSOR_SIZE = 224

# A usable mask must cover at least this fraction of the canvas.
MIN_MASK_COVERAGE = 0.001


class Stage(str, enum.Enum):
    RAW = "raw"
    CALIBRATED = "calibrated"
    MASKED = "masked"
    TENSOR = "tensor"


class PipelineStageError(ValueError):
    """Raised when an operation receives an image at the wrong stage."""


@dataclass(frozen=True)
class SliceImage:
    """Pixels at a known pipeline stage, optionally with a slice mask.

    raw/calibrated/masked stages hold H x W x 3 uint8 intensities; the
    tensor stage holds exactly 224 x 224 x 3 floats in [0, 1].
    """

    pixels: np.ndarray
    stage: Stage
    mask: Optional[np.ndarray] = None
    sample_id: Optional[str] = None

    def require_stage(self, expected: Stage) -> None:
        if self.stage is not expected:
            raise PipelineStageError(
                f"expected {expected.value} image, got {self.stage.value}"
            )

    def violations(self) -> list[str]:
        """Stage-invariant violations; empty list when well formed."""
        out: list[str] = []
        px = self.pixels
        if px.ndim != 3 or px.shape[2] != 3:
            out.append(f"pixels must be H x W x 3, got shape {px.shape}")
            return out
        if self.stage is Stage.TENSOR:
            if px.shape[:2] != (TENSOR_SIZE, TENSOR_SIZE):
                out.append(
                    f"tensor stage must be {TENSOR_SIZE}x{TENSOR_SIZE}, "
                    f"got {px.shape[0]}x{px.shape[1]}"
                )
            if not np.issubdtype(px.dtype, np.floating):
                out.append(f"tensor stage must be floating, got {px.dtype}")
            elif px.size and (px.min() < 0.0 or px.max() > 1.0):
                out.append("tensor values outside [0, 1]")
        else:
            if px.dtype != np.uint8:
                out.append(f"{self.stage.value} stage must be uint8, got {px.dtype}")
        if self.stage is Stage.MASKED:
            if self.mask is None:
                out.append("masked stage requires a mask")
            else:
                if self.mask.shape != px.shape[:2]:
                    out.append(
                        f"mask shape {self.mask.shape} does not match image "
                        f"{px.shape[:2]}"
                    )
                elif self.mask.sum() < MIN_MASK_COVERAGE * self.mask.size:
                    out.append(
                        f"mask covers {int(self.mask.sum())} px, below the "
                        f"{MIN_MASK_COVERAGE:.1%} floor"
                    )
        return out
