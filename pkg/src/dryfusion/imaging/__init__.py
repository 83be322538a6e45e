"""Image pipeline: color calibration, segmentation, tensors, simple features."""

from .types import (
    MIN_MASK_COVERAGE,
    TENSOR_SIZE,
    PipelineStageError,
    SliceImage,
    Stage,
)
from .calibration import (
    CCT_RANGE_K,
    CalibrationRangeError,
    calibrate_color,
    channel_gains,
    planckian_xy,
    white_point_rgb,
)
from .segmentation import (
    SegmentationAmbiguous,
    SegmentationEmpty,
    Segmenter,
    ThresholdSegmenter,
    segment_slices,
)
from .features import SimpleImageFeatures, extract_simple_features, to_model_tensor

__all__ = [
    "CCT_RANGE_K",
    "CalibrationRangeError",
    "MIN_MASK_COVERAGE",
    "PipelineStageError",
    "SegmentationAmbiguous",
    "SegmentationEmpty",
    "Segmenter",
    "SimpleImageFeatures",
    "SliceImage",
    "Stage",
    "TENSOR_SIZE",
    "ThresholdSegmenter",
    "calibrate_color",
    "channel_gains",
    "extract_simple_features",
    "planckian_xy",
    "segment_slices",
    "to_model_tensor",
    "white_point_rgb",
]
