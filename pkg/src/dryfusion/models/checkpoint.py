"""Versioned checkpoint container shared by all trained models.

A checkpoint bundles everything needed to reproduce a forward pass: the
model kind tag, its architecture config, parameter tensors, the
standardization statistics fitted on the training fold, and training
history/provenance metadata. The format number gates loading so stale
files fail loudly instead of silently misloading.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import torch

CHECKPOINT_FORMAT = 1


class CheckpointNotFound(FileNotFoundError):
    pass


class CheckpointFormatError(RuntimeError):
    pass


@dataclass
class Checkpoint:
    kind: str
    config: dict[str, Any]
    state_dict: dict[str, torch.Tensor]
    standardization: dict[str, Any]
    history: list[float] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)


def save_checkpoint(checkpoint: Checkpoint, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    torch.save(
        {
            "format": CHECKPOINT_FORMAT,
            "kind": checkpoint.kind,
            "config": checkpoint.config,
            "state_dict": checkpoint.state_dict,
            "standardization": checkpoint.standardization,
            "history": checkpoint.history,
            "meta": checkpoint.meta,
        },
        path,
    )


def load_checkpoint(path: Path) -> Checkpoint:
    path = Path(path)
    if not path.exists():
        raise CheckpointNotFound(f"checkpoint not found: {path}")
    payload = torch.load(path, map_location="cpu", weights_only=False)
    if payload.get("format") != CHECKPOINT_FORMAT:
        raise CheckpointFormatError(
            f"unsupported checkpoint format {payload.get('format')!r} in {path} "
            f"(expected {CHECKPOINT_FORMAT})"
        )
    return Checkpoint(
        kind=payload["kind"],
        config=payload["config"],
        state_dict=payload["state_dict"],
        standardization=payload["standardization"],
        history=payload["history"],
        meta=payload["meta"],
    )
