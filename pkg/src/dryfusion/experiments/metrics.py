"""Evaluation metric: root-mean-squared error."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def rmse(predictions: Sequence[float], truths: Sequence[float]) -> float:
    predictions = np.asarray(predictions, dtype=np.float64)
    truths = np.asarray(truths, dtype=np.float64)
    if predictions.shape != truths.shape or predictions.size == 0:
        raise ValueError(
            f"predictions and truths must be equal-length and non-empty, "
            f"got {predictions.shape} vs {truths.shape}"
        )
    return float(np.sqrt(np.mean((predictions - truths) ** 2)))
