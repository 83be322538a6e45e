"""Post-hoc analyses over persisted per-record predictions.

Both analyses are derived views: they consume prediction maps (typically
the out-of-fold predictions stored in a report) rather than re-running any
model, so their outputs are reproducible from report files alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..domain import DryingRecord


@dataclass(frozen=True)
class PairedRun:
    run_id: str
    sample_ids: tuple[str, str]
    truths: tuple[float, float]
    predictions: dict[str, tuple[float, float]]  # model label -> (pred A, pred B)


@dataclass(frozen=True)
class PairedSliceReport:
    runs: list[PairedRun]
    mean_abs_error: dict[str, float]
    max_within_run_spread: dict[str, float]


def paired_slice_analysis(
    records: list[DryingRecord],
    predictions_by_model: dict[str, dict[str, float]],
) -> PairedSliceReport:
    """Per-model behavior on two-slice runs.

    For every run with exactly two slices, collects each model's
    predictions for both slices, the per-slice absolute errors averaged
    over all paired runs, and the largest within-run prediction spread
    (zero for any model blind to slice identity, e.g. tabular-only).
    Empty report when the dataset has no paired runs.
    """
    by_run: dict[str, list[DryingRecord]] = {}
    for record in records:
        by_run.setdefault(record.sample.run_id, []).append(record)

    runs: list[PairedRun] = []
    abs_errors: dict[str, list[float]] = {m: [] for m in predictions_by_model}
    spreads: dict[str, float] = {m: 0.0 for m in predictions_by_model}

    for run_id in sorted(by_run):
        group = sorted(by_run[run_id], key=lambda r: r.sample.sample_id)
        if len(group) != 2:
            continue
        ids = (group[0].sample.sample_id, group[1].sample.sample_id)
        truths = (group[0].ground_truth_mc, group[1].ground_truth_mc)
        model_preds: dict[str, tuple[float, float]] = {}
        for model, preds in predictions_by_model.items():
            if ids[0] not in preds or ids[1] not in preds:
                continue
            pair = (preds[ids[0]], preds[ids[1]])
            model_preds[model] = pair
            abs_errors[model].extend(
                (abs(pair[0] - truths[0]), abs(pair[1] - truths[1]))
            )
            spreads[model] = max(spreads[model], abs(pair[0] - pair[1]))
        runs.append(
            PairedRun(run_id=run_id, sample_ids=ids, truths=truths, predictions=model_preds)
        )

    mean_abs = {
        model: (float(np.mean(errors)) if errors else float("nan"))
        for model, errors in abs_errors.items()
    }
    return PairedSliceReport(
        runs=runs, mean_abs_error=mean_abs, max_within_run_spread=spreads
    )


@dataclass(frozen=True)
class ErrorDensity:
    model: str
    bin_edges: np.ndarray
    counts: np.ndarray
    mean: float
    sd: float
    central_90_width: float


def error_density(
    predictions_by_model: dict[str, dict[str, float]],
    truths: dict[str, float],
    bins: int = 21,
    bin_range: tuple[float, float] = (-0.1, 0.1),
) -> list[ErrorDensity]:
    """Binned distribution of (prediction - truth) per model.

    Population statistics; the central 90% width is the gap between the
    5th and 95th percentiles of the signed errors.
    """
    out: list[ErrorDensity] = []
    for model in sorted(predictions_by_model):
        preds = predictions_by_model[model]
        errors = np.array(
            [preds[sid] - truths[sid] for sid in sorted(preds) if sid in truths]
        )
        if errors.size == 0:
            raise ValueError(f"model {model!r} has no predictions matching truths")
        counts, edges = np.histogram(errors, bins=bins, range=bin_range)
        lo, hi = np.percentile(errors, [5.0, 95.0])
        out.append(
            ErrorDensity(
                model=model,
                bin_edges=edges,
                counts=counts,
                mean=float(errors.mean()),
                sd=float(errors.std()),
                central_90_width=float(hi - lo),
            )
        )
    return out
