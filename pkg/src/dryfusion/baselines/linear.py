"""Ordinary least squares baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OLSModel:
    intercept: float
    coefficients: np.ndarray
    rank_deficient: bool


def fit_ols(x: np.ndarray, y: np.ndarray) -> OLSModel:
    """Least squares with intercept via SVD (numerically stable; falls back
    to the minimum-norm solution and flags rank deficiency)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape[0] < x.shape[1] + 1:
        raise ValueError(
            f"need at least {x.shape[1] + 1} rows to fit {x.shape[1]} "
            f"coefficients plus intercept, got {x.shape[0]}"
        )
    design = np.hstack([np.ones((x.shape[0], 1)), x])
    solution, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    return OLSModel(
        intercept=float(solution[0]),
        coefficients=solution[1:],
        rank_deficient=rank < design.shape[1],
    )


def predict_ols(model: OLSModel, x: np.ndarray) -> np.ndarray:
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    return model.intercept + x @ model.coefficients
