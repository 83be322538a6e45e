"""Cross-validated experiment arms: ablation, baseline suite, ratio sweep.

Every arm follows the same discipline: per fold, re-initialize the model
from a seed derived from (base seed, arm name, fold key), fit
standardization statistics on the training fold only, train, and predict
the held-out condition. Per-record out-of-fold predictions are the primary
artifact; all tables derive from them.
"""

from __future__ import annotations

import time
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
import torch

from ..baselines.design import Standardizer, build_design_matrix, targets
from ..baselines.gp import RBFKernelParams, fit_gp, predict_gp
from ..baselines.linear import fit_ols, predict_ols
from ..domain import DryingRecord
from ..models import (
    Checkpoint,
    FusionConfig,
    build_fusion_model,
    build_image_only,
    build_simplified_parallel,
    build_tabular_only,
    save_checkpoint,
)
from ..utils import derive_seed
from .data import FeatureBundle
from .folds import FoldSplit, make_folds
from .metrics import rmse
from .report import ArmResult, ExperimentReport
from .training import TrainingConfig, predict, train

InputKind = str  # "tabular" | "image" | "features"


def _records_by_id(records: list[DryingRecord]) -> dict[str, DryingRecord]:
    return {r.sample.sample_id: r for r in records}


def _tabular_matrix(records: Sequence[DryingRecord]) -> np.ndarray:
    return np.stack(
        [
            np.array(
                [
                    r.conditions.temperature_c,
                    r.conditions.air_velocity_mps,
                    r.conditions.drying_time_min,
                ]
            )
            for r in records
        ]
    )


def _feature_matrix(
    records: Sequence[DryingRecord], bundles: dict[str, FeatureBundle]
) -> np.ndarray:
    return np.stack(
        [
            np.array(
                [
                    bundles[r.sample.sample_id].luminance(),
                    bundles[r.sample.sample_id].simple[3],
                ]
            )
            for r in records
        ]
    )


def _image_tensor(
    records: Sequence[DryingRecord], bundles: dict[str, FeatureBundle]
) -> torch.Tensor:
    return torch.from_numpy(
        np.stack([bundles[r.sample.sample_id].image_chw for r in records])
    )


class _FoldInputs:
    """Per-fold standardized tensors for the requested input kinds."""

    def __init__(
        self,
        kinds: Sequence[InputKind],
        train_records: list[DryingRecord],
        eval_records: list[DryingRecord],
        bundles: Optional[dict[str, FeatureBundle]],
    ):
        self.kinds = tuple(kinds)
        self.standardization: dict[str, dict] = {}
        train_parts: list[torch.Tensor] = []
        eval_parts: list[torch.Tensor] = []
        for kind in kinds:
            if kind == "tabular":
                std = Standardizer.fit(_tabular_matrix(train_records))
                train_np = std.transform(_tabular_matrix(train_records))
                eval_np = std.transform(_tabular_matrix(eval_records))
                self.standardization["tabular"] = std.to_dict()
            elif kind == "features":
                if bundles is None:
                    raise ValueError("feature inputs need preprocessed bundles")
                std = Standardizer.fit(_feature_matrix(train_records, bundles))
                train_np = std.transform(_feature_matrix(train_records, bundles))
                eval_np = std.transform(_feature_matrix(eval_records, bundles))
                self.standardization["features"] = std.to_dict()
            elif kind == "image":
                if bundles is None:
                    raise ValueError("image inputs need preprocessed bundles")
                train_parts.append(_image_tensor(train_records, bundles))
                eval_parts.append(_image_tensor(eval_records, bundles))
                continue
            else:
                raise ValueError(f"unknown input kind {kind!r}")
            train_parts.append(torch.as_tensor(train_np, dtype=torch.float32))
            eval_parts.append(torch.as_tensor(eval_np, dtype=torch.float32))
        self.train = tuple(train_parts)
        self.eval = tuple(eval_parts)


def cross_validate_torch(
    name: str,
    builder: Callable[[int], torch.nn.Module],
    input_kinds: Sequence[InputKind],
    records: list[DryingRecord],
    bundles: Optional[dict[str, FeatureBundle]],
    config: TrainingConfig,
    base_seed: int,
    folds: Optional[list[FoldSplit]] = None,
    checkpoint_dir: Optional[Path] = None,
) -> ArmResult:
    """Grouped cross-validation of one neural arm."""
    folds = folds if folds is not None else make_folds(records)
    by_id = _records_by_id(records)

    predictions: dict[str, float] = {}
    fold_of_record: dict[str, str] = {}
    fold_rmse: dict[str, float] = {}
    final_loss: dict[str, float] = {}

    for fold in folds:
        fold_seed = derive_seed(base_seed, name, fold.key)
        train_records = [by_id[i] for i in fold.train_ids]
        eval_records = [by_id[i] for i in fold.eval_ids]
        inputs = _FoldInputs(input_kinds, train_records, eval_records, bundles)
        y_train = torch.as_tensor(
            targets(train_records), dtype=torch.float32
        )
        model = builder(fold_seed)
        history = train(model, inputs.train, y_train, config, seed=fold_seed)
        preds = predict(model, inputs.eval).numpy().astype(np.float64)

        for record, value in zip(eval_records, preds):
            predictions[record.sample.sample_id] = float(value)
            fold_of_record[record.sample.sample_id] = fold.key
        fold_rmse[fold.key] = rmse(preds, targets(eval_records))
        final_loss[fold.key] = history[-1]

        if checkpoint_dir is not None:
            save_checkpoint(
                Checkpoint(
                    kind=name,
                    config={"training": config.model_dump()},
                    state_dict=model.state_dict(),
                    standardization=inputs.standardization,
                    history=history,
                    meta={"fold": fold.key, "seed": fold_seed},
                ),
                Path(checkpoint_dir) / f"{name.replace('/', '_')}__{fold.key}.pt",
            )

    average = sum(fold_rmse.values()) / len(fold_rmse)
    return ArmResult(
        name=name,
        predictions=predictions,
        fold_of_record=fold_of_record,
        fold_rmse=fold_rmse,
        average_rmse=average,
        final_train_loss=final_loss,
    )


def cross_validate_baseline(
    name: str,
    kind: str,
    mode: str,
    records: list[DryingRecord],
    bundles: Optional[dict[str, FeatureBundle]],
    config: TrainingConfig,
    base_seed: int,
    folds: Optional[list[FoldSplit]] = None,
    rgb_reduction: str = "luminance",
    gp_kernel: Optional[RBFKernelParams] = None,
) -> ArmResult:
    """Grouped cross-validation of an OLS/GP/NN baseline over a design matrix."""
    folds = folds if folds is not None else make_folds(records)
    by_id = _records_by_id(records)

    predictions: dict[str, float] = {}
    fold_of_record: dict[str, str] = {}
    fold_rmse: dict[str, float] = {}

    for fold in folds:
        train_records = [by_id[i] for i in fold.train_ids]
        eval_records = [by_id[i] for i in fold.eval_ids]
        design_train = build_design_matrix(
            train_records, mode, bundles, rgb_reduction=rgb_reduction
        )
        design_eval = build_design_matrix(
            eval_records,
            mode,
            bundles,
            rgb_reduction=rgb_reduction,
            standardizer=design_train.standardizer,
        )
        y_train = targets(train_records)

        if kind == "ols":
            model = fit_ols(design_train.values, y_train)
            preds = predict_ols(model, design_eval.values)
        elif kind == "gp":
            model = fit_gp(design_train.values, y_train, kernel=gp_kernel)
            preds = predict_gp(model, design_eval.values)
        elif kind == "nn":
            from ..baselines.nn import fit_nn, predict_nn

            fold_seed = derive_seed(base_seed, name, fold.key)
            model = fit_nn(design_train.values, y_train, config, seed=fold_seed)
            preds = predict_nn(model, design_eval.values)
        else:
            raise ValueError(f"unknown baseline kind {kind!r}")

        preds = np.asarray(preds, dtype=np.float64)
        for record, value in zip(eval_records, preds):
            predictions[record.sample.sample_id] = float(value)
            fold_of_record[record.sample.sample_id] = fold.key
        fold_rmse[fold.key] = rmse(preds, targets(eval_records))

    average = sum(fold_rmse.values()) / len(fold_rmse)
    return ArmResult(
        name=name,
        predictions=predictions,
        fold_of_record=fold_of_record,
        fold_rmse=fold_rmse,
        average_rmse=average,
    )


def _fusion_builder(base: FusionConfig, ratio: tuple[int, int]):
    def build(seed: int):
        config = base.model_copy(update={"ratio": tuple(ratio), "seed": seed})
        return build_fusion_model(config)

    return build


def _ground_truth(records: list[DryingRecord]) -> dict[str, float]:
    return {r.sample.sample_id: r.ground_truth_mc for r in records}


def run_ablation(
    records: list[DryingRecord],
    bundles: dict[str, FeatureBundle],
    training: TrainingConfig,
    fusion: FusionConfig,
    seed: int,
    config_hash: str = "",
    dataset_hash: str = "",
    deterministic: bool = False,
    checkpoint_dir: Optional[Path] = None,
) -> ExperimentReport:
    """The four-configuration ablation under one shared training config."""
    started = time.monotonic()
    folds = make_folds(records)
    preset = fusion.encoder_preset
    embedding = fusion.embedding_dim

    arms = [
        cross_validate_torch(
            "tabular_only",
            lambda s: build_tabular_only(training.hidden, s),
            ("tabular",),
            records,
            bundles,
            training,
            seed,
            folds,
            checkpoint_dir,
        ),
        cross_validate_torch(
            "image_only",
            lambda s: build_image_only(preset, embedding, s),
            ("image",),
            records,
            bundles,
            training,
            seed,
            folds,
            checkpoint_dir,
        ),
        cross_validate_torch(
            "simplified_parallel",
            lambda s: build_simplified_parallel(
                fusion.model_copy(update={"ratio": tuple(training.ratio), "seed": s})
            ),
            ("tabular", "features"),
            records,
            bundles,
            training,
            seed,
            folds,
            checkpoint_dir,
        ),
        cross_validate_torch(
            "fusion",
            _fusion_builder(fusion, training.ratio),
            ("tabular", "image"),
            records,
            bundles,
            training,
            seed,
            folds,
            checkpoint_dir,
        ),
    ]
    return ExperimentReport(
        kind="ablation",
        seed=seed,
        config_hash=config_hash,
        dataset_hash=dataset_hash,
        ground_truth=_ground_truth(records),
        arms=arms,
        deterministic=deterministic,
        wall_clock_s=time.monotonic() - started,
    )


def run_baseline_suite(
    records: list[DryingRecord],
    bundles: dict[str, FeatureBundle],
    training: TrainingConfig,
    fusion: FusionConfig,
    seed: int,
    config_hash: str = "",
    dataset_hash: str = "",
    deterministic: bool = False,
    rgb_reduction: str = "luminance",
) -> ExperimentReport:
    """OLS/GP/NN on both design matrices plus the fusion model: 7 rows."""
    started = time.monotonic()
    folds = make_folds(records)

    arms: list[ArmResult] = []
    for mode in ("tabular_only", "standard_fusion"):
        for kind in ("ols", "gp", "nn"):
            arms.append(
                cross_validate_baseline(
                    f"{mode}/{kind}",
                    kind,
                    mode,
                    records,
                    bundles,
                    training,
                    seed,
                    folds,
                    rgb_reduction=rgb_reduction,
                )
            )
    arms.append(
        cross_validate_torch(
            "fusion",
            _fusion_builder(fusion, training.ratio),
            ("tabular", "image"),
            records,
            bundles,
            training,
            seed,
            folds,
        )
    )
    return ExperimentReport(
        kind="baselines",
        seed=seed,
        config_hash=config_hash,
        dataset_hash=dataset_hash,
        ground_truth=_ground_truth(records),
        arms=arms,
        deterministic=deterministic,
        wall_clock_s=time.monotonic() - started,
    )


def ratio_sweep(
    records: list[DryingRecord],
    bundles: dict[str, FeatureBundle],
    training: TrainingConfig,
    fusion: FusionConfig,
    ratios: Sequence[tuple[int, int]],
    seed: int,
    config_hash: str = "",
    dataset_hash: str = "",
    deterministic: bool = False,
) -> ExperimentReport:
    """Cross-validated fusion RMSE for each tabular-to-image ratio."""
    started = time.monotonic()
    folds = make_folds(records)
    arms = [
        cross_validate_torch(
            f"ratio/{rt}:{ri}",
            _fusion_builder(fusion, (rt, ri)),
            ("tabular", "image"),
            records,
            bundles,
            training,
            seed,
            folds,
        )
        for rt, ri in ratios
    ]
    return ExperimentReport(
        kind="ratio_sweep",
        seed=seed,
        config_hash=config_hash,
        dataset_hash=dataset_hash,
        ground_truth=_ground_truth(records),
        arms=arms,
        deterministic=deterministic,
        wall_clock_s=time.monotonic() - started,
    )
