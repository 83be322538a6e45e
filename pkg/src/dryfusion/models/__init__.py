"""Neural architectures: the late-fusion model, its variants, checkpoints."""

from .fusion import (
    FusionConfig,
    FusionHead,
    FusionModel,
    ImageEncoder,
    MLPEncoder,
    RatioAllocation,
    allocate_ratio,
    build_fusion_model,
)
from .variants import (
    ImageOnlyNet,
    SimplifiedParallelNet,
    TabularOnlyNet,
    build_image_only,
    build_simplified_parallel,
    build_tabular_only,
)
from .checkpoint import (
    Checkpoint,
    CheckpointFormatError,
    CheckpointNotFound,
    load_checkpoint,
    save_checkpoint,
)

__all__ = [
    "Checkpoint",
    "CheckpointFormatError",
    "CheckpointNotFound",
    "FusionConfig",
    "FusionHead",
    "FusionModel",
    "ImageEncoder",
    "ImageOnlyNet",
    "MLPEncoder",
    "RatioAllocation",
    "SimplifiedParallelNet",
    "TabularOnlyNet",
    "allocate_ratio",
    "build_fusion_model",
    "build_image_only",
    "build_simplified_parallel",
    "build_tabular_only",
    "load_checkpoint",
    "save_checkpoint",
]
