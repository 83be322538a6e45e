"""Experiment reports: provenance-stamped results and derived tables.

A report persists per-record out-of-fold predictions with ground truth,
fold assignments, RMSE summaries and full provenance (tool version, seed,
config hash, dataset hash). The CSV tables are derived views recomputed
from the persisted predictions, never filled in independently, so a report
file alone reproduces every table. In deterministic mode the wall clock is
omitted to keep report bytes a pure function of (dataset, config, seed).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .. import __version__
from ..utils import canonical_json
from .metrics import rmse


@dataclass
class ArmResult:
    """Cross-validated result of one model configuration."""

    name: str
    predictions: dict[str, float]
    fold_of_record: dict[str, str]
    fold_rmse: dict[str, float]
    average_rmse: float
    final_train_loss: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "predictions": self.predictions,
            "fold_of_record": self.fold_of_record,
            "fold_rmse": self.fold_rmse,
            "average_rmse": self.average_rmse,
            "final_train_loss": self.final_train_loss,
        }

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "ArmResult":
        return cls(
            name=payload["name"],
            predictions=payload["predictions"],
            fold_of_record=payload["fold_of_record"],
            fold_rmse=payload["fold_rmse"],
            average_rmse=payload["average_rmse"],
            final_train_loss=payload.get("final_train_loss", {}),
        )


@dataclass
class ExperimentReport:
    kind: str
    seed: int
    config_hash: str
    dataset_hash: str
    ground_truth: dict[str, float]
    arms: list[ArmResult]
    deterministic: bool = False
    wall_clock_s: Optional[float] = None
    tool_version: str = __version__
    extra: dict[str, Any] = field(default_factory=dict)

    def arm(self, name: str) -> ArmResult:
        for arm in self.arms:
            if arm.name == name:
                return arm
        raise KeyError(f"no arm named {name!r} in this report")

    def to_dict(self) -> dict[str, Any]:
        return {
            "report_version": 1,
            "kind": self.kind,
            "tool_version": self.tool_version,
            "seed": self.seed,
            "config_hash": self.config_hash,
            "dataset_hash": self.dataset_hash,
            "deterministic": self.deterministic,
            "wall_clock_s": None if self.deterministic else self.wall_clock_s,
            "ground_truth": self.ground_truth,
            "arms": [arm.to_dict() for arm in self.arms],
            "extra": self.extra,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def save(self, path: Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "ExperimentReport":
        return cls(
            kind=payload["kind"],
            seed=payload["seed"],
            config_hash=payload["config_hash"],
            dataset_hash=payload["dataset_hash"],
            ground_truth=payload["ground_truth"],
            arms=[ArmResult.from_dict(a) for a in payload["arms"]],
            deterministic=payload.get("deterministic", False),
            wall_clock_s=payload.get("wall_clock_s"),
            tool_version=payload.get("tool_version", __version__),
            extra=payload.get("extra", {}),
        )

    @classmethod
    def load(cls, path: Path) -> "ExperimentReport":
        import json

        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def derived_fold_rmses(report: ExperimentReport, arm_name: str) -> dict[str, float]:
    """Recompute per-fold RMSEs from the persisted per-record predictions."""
    arm = report.arm(arm_name)
    by_fold: dict[str, tuple[list[float], list[float]]] = {}
    for sample_id, prediction in arm.predictions.items():
        fold = arm.fold_of_record[sample_id]
        preds, truths = by_fold.setdefault(fold, ([], []))
        preds.append(prediction)
        truths.append(report.ground_truth[sample_id])
    return {fold: rmse(p, t) for fold, (p, t) in sorted(by_fold.items())}


def derived_average_rmse(report: ExperimentReport, arm_name: str) -> float:
    folds = derived_fold_rmses(report, arm_name)
    return sum(folds.values()) / len(folds)


def reduction_percent(other_rmse: float, reference_rmse: float) -> float:
    """Relative RMSE reduction of the reference vs another model, percent."""
    return 100.0 * (other_rmse - reference_rmse) / other_rmse


# Display labels for the ablation and baseline tables.
ABLATION_ORDER = ("tabular_only", "image_only", "simplified_parallel", "fusion")
ABLATION_LABELS = {
    "tabular_only": "Tabular",
    "image_only": "Image only",
    "simplified_parallel": "Tabular with simplified image features",
    "fusion": "Multi-modal data fusion",
}
BASELINE_ORDER = (
    "tabular_only/ols",
    "tabular_only/gp",
    "tabular_only/nn",
    "standard_fusion/ols",
    "standard_fusion/gp",
    "standard_fusion/nn",
    "fusion",
)
BASELINE_LABELS = {
    "tabular_only/ols": ("Tabular-only", "Linear regression"),
    "tabular_only/gp": ("Tabular-only", "GP"),
    "tabular_only/nn": ("Tabular-only", "NN"),
    "standard_fusion/ols": ("Standard tabular-image fusion", "Linear regression"),
    "standard_fusion/gp": ("Standard tabular-image fusion", "GP"),
    "standard_fusion/nn": ("Standard tabular-image fusion", "NN"),
    "fusion": ("Multi-modal data fusion", "Our method"),
}


def _csv_string(rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def render_ablation_table(report: ExperimentReport) -> str:
    """Four-row ablation table derived from persisted predictions."""
    reference = derived_average_rmse(report, "fusion")
    rows = [["dataset", "average_rmse", "rmse_reduction_percent"]]
    for name in ABLATION_ORDER:
        average = derived_average_rmse(report, name)
        reduction = (
            "-" if name == "fusion" else f"{reduction_percent(average, reference):.1f}%"
        )
        rows.append([ABLATION_LABELS[name], f"{average:.4f}", reduction])
    return _csv_string(rows)


def render_baseline_table(report: ExperimentReport) -> str:
    """Seven-row baseline comparison table derived from predictions."""
    reference = derived_average_rmse(report, "fusion")
    rows = [["dataset", "model", "average_rmse", "rmse_reduction_percent"]]
    for name in BASELINE_ORDER:
        average = derived_average_rmse(report, name)
        dataset, model = BASELINE_LABELS[name]
        reduction = (
            "-" if name == "fusion" else f"{reduction_percent(average, reference):.1f}%"
        )
        rows.append([dataset, model, f"{average:.4f}", reduction])
    return _csv_string(rows)


def render_ratio_table(report: ExperimentReport) -> str:
    """One row per swept tabular-to-image ratio, derived from predictions."""
    rows = [["tabular_to_image_ratio", "average_rmse"]]
    ratio_arms = sorted(
        (arm for arm in report.arms if arm.name.startswith("ratio/")),
        key=lambda arm: _ratio_sort_key(arm.name),
    )
    for arm in ratio_arms:
        label = arm.name.split("/", 1)[1]
        rows.append([label, f"{derived_average_rmse(report, arm.name):.4f}"])
    return _csv_string(rows)


def _ratio_sort_key(name: str) -> float:
    rt, ri = name.split("/", 1)[1].split(":")
    return float(rt) / float(ri)
