"""Gaussian-process regression baseline.

Zero-mean GP with an isotropic RBF kernel on standardized inputs and an
internally standardized target. Signal variance and length scale are fitted
by maximizing the log marginal likelihood from a median-heuristic start;
the noise variance is a fixed kernel parameter floored at 1e-6 for
conditioning. Predictions return the posterior mean (variance is exposed
but unused by the harness).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field
from scipy import optimize
from scipy.linalg import cho_factor, cho_solve

NOISE_VARIANCE_FLOOR = 1e-6
MAX_JITTER = 1e-3


class GPConditioningError(RuntimeError):
    """Kernel matrix stayed non-positive-definite past the jitter ceiling."""


class RBFKernelParams(BaseModel, frozen=True):
    signal_variance: float = Field(default=1.0, gt=0.0)
    length_scale: Optional[float] = Field(default=None, gt=0.0)
    noise_variance: float = Field(default=1e-4, ge=0.0)

    def effective_noise(self) -> float:
        return max(self.noise_variance, NOISE_VARIANCE_FLOOR)


@dataclass
class GPModel:
    x_train: np.ndarray
    alpha: np.ndarray
    kernel: RBFKernelParams
    y_mean: float
    y_std: float
    log_marginal_likelihood: float


def _sq_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    diff = a[:, None, :] - b[None, :, :]
    return np.sum(diff**2, axis=-1)


def rbf_kernel(
    a: np.ndarray, b: np.ndarray, signal_variance: float, length_scale: float
) -> np.ndarray:
    return signal_variance * np.exp(
        -0.5 * _sq_distances(a, b) / length_scale**2
    )


def median_heuristic(x: np.ndarray) -> float:
    """Median pairwise distance, the standard robust length-scale start."""
    d = np.sqrt(_sq_distances(x, x))
    upper = d[np.triu_indices_from(d, k=1)]
    if upper.size == 0 or np.all(upper == 0.0):
        return 1.0
    return float(np.median(upper[upper > 0.0]))


def _cholesky_with_jitter(k: np.ndarray) -> tuple[tuple[np.ndarray, bool], float]:
    jitter = 0.0
    while True:
        try:
            return cho_factor(k + jitter * np.eye(k.shape[0]), lower=True), jitter
        except np.linalg.LinAlgError:
            jitter = 1e-10 if jitter == 0.0 else jitter * 10.0
            if jitter > MAX_JITTER:
                raise GPConditioningError(
                    f"kernel matrix not positive definite even with jitter "
                    f"{MAX_JITTER}"
                ) from None


def _negative_lml(
    log_params: np.ndarray, x: np.ndarray, y: np.ndarray, noise: float
) -> float:
    signal, length = np.exp(log_params)
    k = rbf_kernel(x, x, signal, length) + noise * np.eye(x.shape[0])
    try:
        factor, _ = _cholesky_with_jitter(k)
    except GPConditioningError:
        return 1e12
    alpha = cho_solve(factor, y)
    log_det = 2.0 * np.sum(np.log(np.diag(factor[0])))
    n = x.shape[0]
    lml = -0.5 * float(y @ alpha) - 0.5 * log_det - 0.5 * n * np.log(2.0 * np.pi)
    return -lml


def fit_gp(
    x: np.ndarray,
    y: np.ndarray,
    kernel: Optional[RBFKernelParams] = None,
    optimize_hyperparameters: bool = True,
) -> GPModel:
    """Fit the GP; ``optimize_hyperparameters=False`` keeps the given kernel
    (used by the closed-form oracle comparisons)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape[0] < 2:
        raise ValueError(f"GP regression needs >= 2 rows, got {x.shape[0]}")
    kernel = kernel or RBFKernelParams()

    y_mean = float(y.mean())
    y_std = float(y.std())
    if y_std < 1e-12:
        y_std = 1.0
    y_s = (y - y_mean) / y_std
    noise = kernel.effective_noise()

    length = kernel.length_scale or median_heuristic(x)
    signal = kernel.signal_variance
    if optimize_hyperparameters:
        result = optimize.minimize(
            _negative_lml,
            x0=np.log([signal, length]),
            args=(x, y_s, noise),
            method="L-BFGS-B",
            bounds=[(-8.0, 8.0), (np.log(1e-3), np.log(1e3))],
        )
        signal, length = np.exp(result.x)

    kernel = RBFKernelParams(
        signal_variance=float(signal),
        length_scale=float(length),
        noise_variance=kernel.noise_variance,
    )
    k = rbf_kernel(x, x, signal, length) + noise * np.eye(x.shape[0])
    factor, _ = _cholesky_with_jitter(k)
    alpha = cho_solve(factor, y_s)
    log_det = 2.0 * np.sum(np.log(np.diag(factor[0])))
    lml = (
        -0.5 * float(y_s @ alpha)
        - 0.5 * log_det
        - 0.5 * x.shape[0] * np.log(2.0 * np.pi)
    )
    return GPModel(
        x_train=x,
        alpha=alpha,
        kernel=kernel,
        y_mean=y_mean,
        y_std=y_std,
        log_marginal_likelihood=lml,
    )


def predict_gp(
    model: GPModel,
    x: np.ndarray,
    return_std: bool = False,
    standardized: bool = False,
):
    """Posterior mean at ``x`` (optionally posterior standard deviation).

    ``standardized=True`` returns the mean in standardized target space,
    where the zero-mean prior pulls predictions far from data toward 0.
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    k_star = rbf_kernel(
        x, model.x_train, model.kernel.signal_variance, model.kernel.length_scale
    )
    mean_std_space = k_star @ model.alpha
    mean = mean_std_space if standardized else model.y_mean + model.y_std * mean_std_space
    if not return_std:
        return mean
    k_train = rbf_kernel(
        model.x_train,
        model.x_train,
        model.kernel.signal_variance,
        model.kernel.length_scale,
    ) + model.kernel.effective_noise() * np.eye(model.x_train.shape[0])
    factor, _ = _cholesky_with_jitter(k_train)
    solved = cho_solve(factor, k_star.T)
    prior = model.kernel.signal_variance
    var = np.maximum(prior - np.sum(k_star * solved.T, axis=1), 0.0)
    scale = 1.0 if standardized else model.y_std
    return mean, scale * np.sqrt(var)
