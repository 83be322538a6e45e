"""Synthetic drying dataset generation: kinetics, slice rendering, manifests."""

from .kinetics import (
    KineticsError,
    KineticsParams,
    predicted_final_mc,
    rate_constant,
    simulate_final_mc,
    solve_drying_time,
)
from .render import RenderSpec, RenderedSlice, render_run_image, render_slice_image
from .generate import (
    ExperimentDesign,
    GeneratedDataset,
    NominalSample,
    VariabilityParams,
    generate_dataset,
    image_signal_r2,
)

__all__ = [
    "ExperimentDesign",
    "GeneratedDataset",
    "KineticsError",
    "KineticsParams",
    "NominalSample",
    "RenderSpec",
    "RenderedSlice",
    "VariabilityParams",
    "generate_dataset",
    "image_signal_r2",
    "predicted_final_mc",
    "rate_constant",
    "render_run_image",
    "render_slice_image",
    "simulate_final_mc",
    "solve_drying_time",
]
