"""FC neural-network baseline over design-matrix inputs."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import torch

from ..models.variants import TabularOnlyNet


@dataclass
class BaselineNN:
    model: TabularOnlyNet
    history: list[float] = field(default_factory=list)


def fit_nn(x: np.ndarray, y: np.ndarray, config, seed: int = 0) -> BaselineNN:
    """Train input -> hidden -> 1 on a (standardized) design matrix with
    the shared optimizer contract; deterministic per seed."""
    from ..experiments.training import train

    torch.manual_seed(seed)
    net = TabularOnlyNet(hidden=config.hidden, input_dim=x.shape[1])
    x_t = torch.as_tensor(np.asarray(x), dtype=torch.float32)
    y_t = torch.as_tensor(np.asarray(y), dtype=torch.float32)
    history = train(net, (x_t,), y_t, config, seed=seed)
    return BaselineNN(model=net, history=history)


def predict_nn(model: BaselineNN, x: np.ndarray) -> np.ndarray:
    x_t = torch.as_tensor(np.atleast_2d(np.asarray(x)), dtype=torch.float32)
    model.model.eval()
    with torch.no_grad():
        return model.model(x_t).numpy().astype(np.float64)
