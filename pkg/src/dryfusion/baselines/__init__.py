"""Benchmark models: linear regression, Gaussian process, FC network."""

from .design import (
    DesignMatrix,
    DesignMode,
    MissingFeatureError,
    Standardizer,
    build_design_matrix,
    targets,
)
from .linear import OLSModel, fit_ols, predict_ols
from .gp import (
    GPConditioningError,
    GPModel,
    RBFKernelParams,
    fit_gp,
    median_heuristic,
    predict_gp,
    rbf_kernel,
)
from .nn import BaselineNN, fit_nn, predict_nn

__all__ = [
    "BaselineNN",
    "DesignMatrix",
    "DesignMode",
    "GPConditioningError",
    "GPModel",
    "MissingFeatureError",
    "OLSModel",
    "RBFKernelParams",
    "Standardizer",
    "build_design_matrix",
    "fit_gp",
    "fit_nn",
    "fit_ols",
    "median_heuristic",
    "predict_gp",
    "predict_nn",
    "predict_ols",
    "rbf_kernel",
    "targets",
]
