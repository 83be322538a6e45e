"""Single-modality and simplified-feature variants used by the ablation.

All variants share the fusion model's building blocks and bounded output
so differences in cross-validated error come from the data each one sees,
not from architectural asymmetries.
"""

from __future__ import annotations

import torch
from torch import nn

from .fusion import (
    EncoderPreset,
    FusionConfig,
    FusionHead,
    ImageEncoder,
    MLPEncoder,
    allocate_ratio,
)


class TabularOnlyNet(nn.Module):
    """FC 3 -> hidden -> 1 with a bounded output."""

    def __init__(self, hidden: int = 1024, input_dim: int = 3):
        super().__init__()
        self.input_dim = input_dim
        self.fc1 = nn.Linear(input_dim, hidden)
        self.fc2 = nn.Linear(hidden, 1)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        if x.shape[-1] != self.input_dim:
            raise ValueError(
                f"expected {self.input_dim} input features, got {x.shape[-1]}"
            )
        out = self.fc2(torch.relu(self.fc1(x)))
        return torch.sigmoid(out).squeeze(-1)


class ImageOnlyNet(nn.Module):
    """Residual CNN encoder with a direct bounded scalar head."""

    def __init__(self, preset: EncoderPreset = "resnet18", embedding_dim: int = 512):
        super().__init__()
        self.encoder = ImageEncoder(preset, embedding_dim)
        self.output = nn.Linear(embedding_dim, 1)

    def forward(self, image: torch.Tensor) -> torch.Tensor:
        out = self.output(self.encoder(image))
        return torch.sigmoid(out).squeeze(-1)


class SimplifiedParallelNet(nn.Module):
    """Tabular (1x3) and simplified image features (1x2) in parallel.

    Each branch is encoded to the common embedding width, then fused by the
    same ratio-allocated projection head as the full model.
    """

    def __init__(self, config: FusionConfig, feature_dim: int = 2):
        super().__init__()
        self.config = config
        self.allocation = allocate_ratio(config.ratio, config.fused_dim)
        self.tabular_encoder = MLPEncoder(3, config.tabular_hidden, config.embedding_dim)
        self.feature_encoder = MLPEncoder(
            feature_dim, config.tabular_hidden, config.embedding_dim
        )
        self.head = FusionHead(config.embedding_dim, self.allocation, config.head_hidden)

    def forward(self, tabular: torch.Tensor, features: torch.Tensor) -> torch.Tensor:
        return self.head(self.tabular_encoder(tabular), self.feature_encoder(features))


def build_tabular_only(hidden: int, seed: int) -> TabularOnlyNet:
    torch.manual_seed(seed)
    return TabularOnlyNet(hidden=hidden)


def build_image_only(preset: EncoderPreset, embedding_dim: int, seed: int) -> ImageOnlyNet:
    torch.manual_seed(seed)
    return ImageOnlyNet(preset=preset, embedding_dim=embedding_dim)


def build_simplified_parallel(config: FusionConfig, seed: int) -> SimplifiedParallelNet:
    torch.manual_seed(seed)
    return SimplifiedParallelNet(config)
