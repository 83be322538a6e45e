"""Color-temperature calibration via a diagonal von Kries transform.

Channel gains map the source illuminant's white point onto the target's,
with both white points derived from correlated color temperature through
the Kim et al. cubic approximation of the Planckian locus and the standard
sRGB matrix. Gains are normalized so green stays fixed.
"""

from __future__ import annotations

import numpy as np

from .types import SliceImage, Stage

CCT_RANGE_K = (2000.0, 12000.0)

# Planckian locus chromaticity approximation, Kim et al. (2002),
# "Design of Advanced Color Temperature Control System for HDTV Applications"
# (as reproduced in standard colorimetry references). Valid 1667 K - 25000 K.
_KIM_X_LOW = (-0.2661239e9, -0.2343589e6, 0.8776956e3, 0.179910)   # T < 4000 K
_KIM_X_HIGH = (-3.0258469e9, 2.1070379e6, 0.2226347e3, 0.240390)   # T >= 4000 K
_KIM_Y_LOW = (-1.1063814, -1.34811020, 2.18555832, -0.20219683)    # T < 2222 K
_KIM_Y_MID = (-0.9549476, -1.37418593, 2.09137015, -0.16748867)    # 2222-4000 K
_KIM_Y_HIGH = (3.0817580, -5.87338670, 3.75112997, -0.37001483)    # T >= 4000 K

# Linear sRGB from CIE XYZ, IEC 61966-2-1 (D65 reference white).
_XYZ_TO_LINEAR_SRGB = np.array(
    [
        [3.2404542, -1.5371385, -0.4985314],
        [-0.9692660, 1.8760108, 0.0415560],
        [0.0556434, -0.2040259, 1.0572252],
    ]
)


class CalibrationRangeError(ValueError):
    """Raised when a correlated color temperature is outside the valid range."""


def _check_cct(cct_k: float) -> None:
    lo, hi = CCT_RANGE_K
    if not lo <= cct_k <= hi:
        raise CalibrationRangeError(
            f"color temperature {cct_k} K outside [{lo:.0f}, {hi:.0f}] K"
        )


def planckian_xy(cct_k: float) -> tuple[float, float]:
    """CIE 1931 (x, y) chromaticity of a blackbody at ``cct_k``."""
    _check_cct(cct_k)
    t = cct_k
    cx = _KIM_X_LOW if t < 4000.0 else _KIM_X_HIGH
    x = cx[0] / t**3 + cx[1] / t**2 + cx[2] / t + cx[3]
    if t < 2222.0:
        cy = _KIM_Y_LOW
    elif t < 4000.0:
        cy = _KIM_Y_MID
    else:
        cy = _KIM_Y_HIGH
    y = cy[0] * x**3 + cy[1] * x**2 + cy[2] * x + cy[3]
    return float(x), float(y)


def white_point_rgb(cct_k: float) -> np.ndarray:
    """Linear-sRGB white point of a blackbody illuminant, scaled to G = 1."""
    x, y = planckian_xy(cct_k)
    xyz = np.array([x / y, 1.0, (1.0 - x - y) / y])
    rgb = _XYZ_TO_LINEAR_SRGB @ xyz
    if np.any(rgb <= 0.0):
        raise CalibrationRangeError(
            f"white point at {cct_k} K falls outside the sRGB gamut"
        )
    return rgb / rgb[1]


def channel_gains(source_cct_k: float, target_cct_k: float) -> np.ndarray:
    """Per-channel von Kries gains mapping source white to target white,
    normalized so the green gain is exactly 1."""
    gains = white_point_rgb(target_cct_k) / white_point_rgb(source_cct_k)
    return gains / gains[1]


def calibrate_color(
    image: SliceImage, source_cct_k: float = 5000.0, target_cct_k: float = 6500.0
) -> SliceImage:
    """Apply the diagonal white-balance transform to a raw image.

    Output intensities are clipped to [0, 255]; equal source and target
    temperatures leave pixels bit-identical.
    """
    image.require_stage(Stage.RAW)
    gains = channel_gains(source_cct_k, target_cct_k)
    if source_cct_k == target_cct_k:
        pixels = image.pixels.copy()
    else:
        scaled = image.pixels.astype(np.float64) * gains
        pixels = np.clip(np.rint(scaled), 0, 255).astype(np.uint8)
    return SliceImage(
        pixels=pixels, stage=Stage.CALIBRATED, mask=image.mask, sample_id=image.sample_id
    )
