"""Mini-batch training loop shared by every neural model in the harness.

Minimizes mean squared error on the MC fraction with the adaptive-moment
optimizer; RMSE is only ever computed post hoc from predictions. No early
stopping and no inner validation split: models train for the configured
number of epochs exactly. Deterministic per seed when the process-level
deterministic mode is enabled.
"""

from __future__ import annotations

from typing import Literal, Sequence

import torch
from pydantic import BaseModel, Field
from torch import nn


class TrainingConfig(BaseModel, frozen=True):
    """Training hyperparameters; defaults follow the reference recipe
    (batch 64, hidden 1024, lr 1e-4, 300 epochs, Adam, 8:1 ratio)."""

    batch_size: int = Field(default=64, ge=1)
    hidden: int = Field(default=1024, ge=1)
    learning_rate: float = Field(default=1e-4, gt=0.0)
    epochs: int = Field(default=300, ge=1)
    optimizer: Literal["adam"] = "adam"
    metric: Literal["rmse"] = "rmse"
    ratio: tuple[int, int] = (8, 1)
    seed: int = 0


class TrainingDiverged(RuntimeError):
    """Loss became non-finite; the model keeps its last finite-loss state."""


_DEFAULT_THREADS = torch.get_num_threads()


def set_deterministic(enabled: bool = True) -> None:
    """Process-wide switches for bit-reproducible training."""
    if enabled:
        torch.manual_seed(0)
        torch.set_num_threads(1)
        torch.use_deterministic_algorithms(True)
    else:
        torch.set_num_threads(_DEFAULT_THREADS)
        torch.use_deterministic_algorithms(False)


def train(
    model: nn.Module,
    inputs: Sequence[torch.Tensor],
    targets: torch.Tensor,
    config: TrainingConfig,
    seed: int = 0,
) -> list[float]:
    """Train in place; returns the per-epoch mean training loss history.

    ``inputs`` is the tuple of tensors the model's forward consumes, all
    indexed the same way as ``targets``.

    Raises:
        TrainingDiverged: non-finite loss; the model is restored to the
            state after the last fully finite epoch.
    """
    n = targets.shape[0]
    if n == 0:
        raise ValueError("cannot train on an empty dataset")
    for tensor in inputs:
        if tensor.shape[0] != n:
            raise ValueError(
                f"input batch dimension {tensor.shape[0]} does not match "
                f"{n} targets"
            )

    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)
    generator = torch.Generator().manual_seed(seed)
    history: list[float] = []
    last_good = {k: v.detach().clone() for k, v in model.state_dict().items()}
    model.train()

    for _ in range(config.epochs):
        order = torch.randperm(n, generator=generator)
        epoch_loss = 0.0
        for start in range(0, n, config.batch_size):
            batch = order[start : start + config.batch_size]
            optimizer.zero_grad()
            prediction = model(*(tensor[batch] for tensor in inputs))
            loss = torch.mean((prediction - targets[batch]) ** 2)
            if not torch.isfinite(loss):
                model.load_state_dict(last_good)
                raise TrainingDiverged(
                    f"non-finite loss at epoch {len(history) + 1}; "
                    f"restored last finite state "
                    f"(lr={config.learning_rate}, batch={config.batch_size})"
                )
            loss.backward()
            optimizer.step()
            epoch_loss += float(loss.detach()) * len(batch)
        history.append(epoch_loss / n)
        last_good = {k: v.detach().clone() for k, v in model.state_dict().items()}

    model.eval()
    return history


def predict(model: nn.Module, inputs: Sequence[torch.Tensor]) -> torch.Tensor:
    """Forward pass without gradients, in eval mode."""
    model.eval()
    with torch.no_grad():
        return model(*inputs)
