"""Design matrices for the classical baselines.

Three layouts: tabular-only (T, v, t), standard fusion (those three plus a
gray-reduced mean color and the mask area, the conventional 1x5 input), and
the simplified-parallel layout that carries the same five columns but is
split into a 1x3 tabular branch and a 1x2 feature branch by the model.
Columns are standardized with statistics fitted on the training fold only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from ..domain import DryingRecord
from ..experiments.data import LUMA_WEIGHTS, FeatureBundle

DesignMode = Literal["tabular_only", "standard_fusion", "simplified_parallel"]

TABULAR_COLUMNS = ("temperature_c", "air_velocity_mps", "drying_time_min")


class MissingFeatureError(ValueError):
    """An image-bearing mode was requested without image features."""


@dataclass(frozen=True)
class Standardizer:
    """Column-wise affine map to zero mean and unit variance."""

    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def fit(cls, values: np.ndarray) -> "Standardizer":
        mean = values.mean(axis=0)
        std = values.std(axis=0)
        std = np.where(std < 1e-12, 1.0, std)
        return cls(mean=mean, std=std)

    def transform(self, values: np.ndarray) -> np.ndarray:
        return (values - self.mean) / self.std

    def to_dict(self) -> dict:
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_dict(cls, payload: dict) -> "Standardizer":
        return cls(np.asarray(payload["mean"]), np.asarray(payload["std"]))


@dataclass(frozen=True)
class DesignMatrix:
    values: np.ndarray
    columns: tuple[str, ...]
    mode: DesignMode
    standardizer: Standardizer


def _raw_columns(
    records: list[DryingRecord],
    bundles: Optional[dict[str, FeatureBundle]],
    mode: DesignMode,
    rgb_reduction: str,
) -> tuple[np.ndarray, tuple[str, ...]]:
    tabular = np.stack(
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
    if mode == "tabular_only":
        return tabular, TABULAR_COLUMNS

    if bundles is None:
        raise MissingFeatureError(f"mode {mode!r} needs image feature bundles")
    missing = [r.sample.sample_id for r in records if r.sample.sample_id not in bundles]
    if missing:
        raise MissingFeatureError(
            f"no image features for {len(missing)} record(s), e.g. {missing[0]!r}"
        )

    simple = np.stack([bundles[r.sample.sample_id].simple for r in records])
    area = simple[:, 3:4]
    if rgb_reduction == "per_channel":
        image_cols = np.hstack([simple[:, :3], area])
        names = ("mean_r", "mean_g", "mean_b", "area_px")
    else:
        gray = simple[:, :3] @ np.asarray(LUMA_WEIGHTS)
        image_cols = np.hstack([gray[:, None], area])
        names = ("mean_gray", "area_px")
    return np.hstack([tabular, image_cols]), TABULAR_COLUMNS + names


def build_design_matrix(
    records: list[DryingRecord],
    mode: DesignMode,
    bundles: Optional[dict[str, FeatureBundle]] = None,
    rgb_reduction: str = "luminance",
    standardizer: Optional[Standardizer] = None,
) -> DesignMatrix:
    """Assemble and standardize the design matrix for ``records``.

    Pass the training fold's ``standardizer`` when building an evaluation
    matrix; omitting it fits fresh statistics (training usage).
    """
    values, columns = _raw_columns(records, bundles, mode, rgb_reduction)
    if standardizer is None:
        standardizer = Standardizer.fit(values)
    return DesignMatrix(
        values=standardizer.transform(values),
        columns=columns,
        mode=mode,
        standardizer=standardizer,
    )


def targets(records: list[DryingRecord]) -> np.ndarray:
    return np.array([r.ground_truth_mc for r in records])
