"""Late-fusion MC regression: parallel encoders, ratio-allocated concatenation.

A three-layer FC encoder lifts the standardized (temperature, velocity,
time) triple to an embedding; a residual CNN encodes the masked slice
tensor to an embedding of the same width. Each embedding then passes
through its own linear projection whose output width is set by the
tabular-to-image ratio, the projections are concatenated into the fused
vector, and a small FC head with a bounded output maps to a single MC
fraction in (0, 1). The ratio thus controls how much of the fused
representation each modality owns: 1:1 means equal dimensionality, and
extreme ratios approach (but never reach) single-modality models because
every branch keeps at least one dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import torch
from pydantic import BaseModel, Field, model_validator
from torch import nn

from ..imaging import TENSOR_SIZE

EncoderPreset = Literal["resnet18", "tiny"]

# width per stage, two residual blocks each
_PRESET_WIDTHS: dict[str, tuple[int, ...]] = {
    "resnet18": (64, 128, 256, 512),
    "tiny": (4, 8, 16, 16),
}


class FusionConfig(BaseModel, frozen=True):
    """Architecture and initialization parameters of the fusion model."""

    tabular_hidden: int = Field(default=1024, ge=1)
    embedding_dim: int = Field(default=512, ge=1)
    fused_dim: int = Field(default=1024, ge=2)
    head_hidden: int = Field(default=1024, ge=1)
    ratio: tuple[int, int] = (8, 1)
    encoder_preset: EncoderPreset = "resnet18"
    seed: int = 0

    @model_validator(mode="after")
    def _check_ratio(self) -> "FusionConfig":
        if self.ratio[0] < 1 or self.ratio[1] < 1:
            raise ValueError(f"ratio components must be >= 1, got {self.ratio}")
        return self


@dataclass(frozen=True)
class RatioAllocation:
    """How many fused dimensions each branch owns."""

    tabular_dims: int
    image_dims: int

    @property
    def fused_dim(self) -> int:
        return self.tabular_dims + self.image_dims


def allocate_ratio(ratio: tuple[int, int], fused_dim: int) -> RatioAllocation:
    """Split ``fused_dim`` in proportion ``ratio`` (tabular : image).

    Floor rounding with ties toward tabular, clamped so each branch keeps
    at least one dimension at any finite ratio.
    """
    rt, ri = ratio
    if rt < 1 or ri < 1:
        raise ValueError(f"ratio components must be >= 1, got {ratio}")
    if fused_dim < 2:
        raise ValueError(f"fused_dim must be >= 2, got {fused_dim}")
    tabular = math.floor(fused_dim * rt / (rt + ri))
    tabular = min(max(tabular, 1), fused_dim - 1)
    return RatioAllocation(tabular_dims=tabular, image_dims=fused_dim - tabular)


class MLPEncoder(nn.Module):
    """Three-layer FC map (input, hidden, output) with one ReLU between."""

    def __init__(self, input_dim: int, hidden: int, embedding_dim: int):
        super().__init__()
        self.input_dim = input_dim
        self.fc1 = nn.Linear(input_dim, hidden)
        self.fc2 = nn.Linear(hidden, embedding_dim)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        if x.shape[-1] != self.input_dim:
            raise ValueError(
                f"expected {self.input_dim} input features, got {x.shape[-1]}"
            )
        return self.fc2(torch.relu(self.fc1(x)))


class BasicBlock(nn.Module):
    """Two 3x3 convolutions with batch norm and an identity/projection skip."""

    def __init__(self, in_channels: int, out_channels: int, stride: int = 1):
        super().__init__()
        self.conv1 = nn.Conv2d(
            in_channels, out_channels, 3, stride=stride, padding=1, bias=False
        )
        self.bn1 = nn.BatchNorm2d(out_channels)
        self.conv2 = nn.Conv2d(out_channels, out_channels, 3, padding=1, bias=False)
        self.bn2 = nn.BatchNorm2d(out_channels)
        if stride != 1 or in_channels != out_channels:
            self.shortcut = nn.Sequential(
                nn.Conv2d(in_channels, out_channels, 1, stride=stride, bias=False),
                nn.BatchNorm2d(out_channels),
            )
        else:
            self.shortcut = nn.Identity()

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        out = torch.relu(self.bn1(self.conv1(x)))
        out = self.bn2(self.conv2(out))
        return torch.relu(out + self.shortcut(x))


class ImageEncoder(nn.Module):
    """Residual CNN with the 18-layer topology: stem, four stages of two
    basic blocks, global average pooling, then a linear projection to the
    embedding width. The tiny preset shrinks stage widths only."""

    def __init__(self, preset: EncoderPreset = "resnet18", embedding_dim: int = 512):
        super().__init__()
        widths = _PRESET_WIDTHS[preset]
        self.preset = preset
        self.stem = nn.Sequential(
            nn.Conv2d(3, widths[0], 7, stride=2, padding=3, bias=False),
            nn.BatchNorm2d(widths[0]),
            nn.ReLU(inplace=True),
            nn.MaxPool2d(3, stride=2, padding=1),
        )
        stages = []
        in_ch = widths[0]
        for stage_index, width in enumerate(widths):
            stride = 1 if stage_index == 0 else 2
            stages.append(BasicBlock(in_ch, width, stride=stride))
            stages.append(BasicBlock(width, width))
            in_ch = width
        self.stages = nn.Sequential(*stages)
        self.pool = nn.AdaptiveAvgPool2d(1)
        self.project = nn.Linear(widths[-1], embedding_dim)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        if x.ndim != 4 or x.shape[1] != 3 or x.shape[2:] != (TENSOR_SIZE, TENSOR_SIZE):
            raise ValueError(
                f"expected [N, 3, {TENSOR_SIZE}, {TENSOR_SIZE}] input, "
                f"got {tuple(x.shape)}"
            )
        out = self.stages(self.stem(x))
        out = self.pool(out).flatten(1)
        return self.project(out)


class FusionHead(nn.Module):
    """Per-branch projections, concatenation, and the bounded scalar head."""

    def __init__(
        self, embedding_dim: int, allocation: RatioAllocation, head_hidden: int
    ):
        super().__init__()
        self.allocation = allocation
        self.tabular_projection = nn.Linear(embedding_dim, allocation.tabular_dims)
        self.image_projection = nn.Linear(embedding_dim, allocation.image_dims)
        self.hidden = nn.Linear(allocation.fused_dim, head_hidden)
        self.output = nn.Linear(head_hidden, 1)

    def forward(
        self, tabular_embedding: torch.Tensor, image_embedding: torch.Tensor
    ) -> torch.Tensor:
        fused = torch.cat(
            [
                self.tabular_projection(tabular_embedding),
                self.image_projection(image_embedding),
            ],
            dim=-1,
        )
        out = self.output(torch.relu(self.hidden(fused)))
        return torch.sigmoid(out).squeeze(-1)


class FusionModel(nn.Module):
    """Full tabular + image late-fusion regressor."""

    def __init__(self, config: FusionConfig):
        super().__init__()
        self.config = config
        self.allocation = allocate_ratio(config.ratio, config.fused_dim)
        self.tabular_encoder = MLPEncoder(
            3, config.tabular_hidden, config.embedding_dim
        )
        self.image_encoder = ImageEncoder(config.encoder_preset, config.embedding_dim)
        self.head = FusionHead(config.embedding_dim, self.allocation, config.head_hidden)

    def forward(self, tabular: torch.Tensor, image: torch.Tensor) -> torch.Tensor:
        return self.head(self.tabular_encoder(tabular), self.image_encoder(image))


def build_fusion_model(config: FusionConfig) -> FusionModel:
    """Construct with deterministic parameter initialization from the seed."""
    torch.manual_seed(config.seed)
    return FusionModel(config)
