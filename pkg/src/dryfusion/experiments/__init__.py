"""Experiment harness: folds, training, cross-validated runs, analyses."""

from .folds import FoldError, FoldSplit, make_folds
from .metrics import rmse
from .training import TrainingConfig, TrainingDiverged, predict, set_deterministic, train
from .data import (
    FeatureBundle,
    ImagingSettings,
    SegmentationSettings,
    preprocess_record,
    preprocess_records,
)
from .analysis import (
    ErrorDensity,
    PairedRun,
    PairedSliceReport,
    error_density,
    paired_slice_analysis,
)
from .report import (
    ArmResult,
    ExperimentReport,
    derived_average_rmse,
    derived_fold_rmses,
    reduction_percent,
    render_ablation_table,
    render_baseline_table,
    render_ratio_table,
)
from .runner import (
    cross_validate_baseline,
    cross_validate_torch,
    ratio_sweep,
    run_ablation,
    run_baseline_suite,
)

__all__ = [
    "ArmResult",
    "ErrorDensity",
    "ExperimentReport",
    "FeatureBundle",
    "FoldError",
    "FoldSplit",
    "ImagingSettings",
    "PairedRun",
    "PairedSliceReport",
    "SegmentationSettings",
    "TrainingConfig",
    "TrainingDiverged",
    "cross_validate_baseline",
    "cross_validate_torch",
    "derived_average_rmse",
    "derived_fold_rmses",
    "error_density",
    "make_folds",
    "paired_slice_analysis",
    "predict",
    "preprocess_record",
    "preprocess_records",
    "ratio_sweep",
    "reduction_percent",
    "render_ablation_table",
    "render_baseline_table",
    "render_ratio_table",
    "rmse",
    "run_ablation",
    "run_baseline_suite",
    "set_deterministic",
    "train",
]
