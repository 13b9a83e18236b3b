"""L-channel handling: weighted blend of mapped lightness, optional enhancement.

The a/b transfer leaves L untouched; here the mapped L component is
mixed back in with weight alpha. Enhancement is a pluggable hook: the
built-in substitute is a midtone gamma correction driving the median L
to 50, and an externally enhanced L channel can be supplied as an 8-bit
grayscale PNG instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import DimensionMismatch

DEFAULT_ALPHA = 0.3

GAMMA_MIN, GAMMA_MAX = 0.5, 2.0


@dataclass
class LightingParams:
    alpha: float = DEFAULT_ALPHA
    enhance: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")


def blend_l(original_l: np.ndarray, mapped_l: np.ndarray,
            alpha: float = DEFAULT_ALPHA) -> np.ndarray:
    """Per-pixel (1 - alpha) * original + alpha * mapped, clamped to [0, 100].

    alpha=0 reproduces the original L exactly, alpha=1 the mapped L.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    original_l = np.asarray(original_l, dtype=np.float64)
    mapped_l = np.asarray(mapped_l, dtype=np.float64)
    if original_l.shape != mapped_l.shape:
        raise DimensionMismatch(f"{original_l.shape} vs {mapped_l.shape}")
    return np.clip((1.0 - alpha) * original_l + alpha * mapped_l, 0.0, 100.0)


def enhance_l(l_channel: np.ndarray) -> np.ndarray:
    """Built-in global enhancement: gamma that maps the median L to 50.

    gamma is clamped to [0.5, 2.0]; the power curve is monotone and
    keeps values in [0, 100]. A median already at 50 (or degenerate at
    0/100) leaves the channel unchanged.
    """
    l_channel = np.asarray(l_channel, dtype=np.float64)
    median = float(np.median(l_channel))
    if median <= 0.0 or median >= 100.0:
        return l_channel.copy()
    gamma = np.log(0.5) / np.log(median / 100.0)
    gamma = min(max(gamma, GAMMA_MIN), GAMMA_MAX)
    if gamma == 1.0:
        return l_channel.copy()
    return 100.0 * (np.clip(l_channel, 0.0, 100.0) / 100.0) ** gamma


def load_l_channel(path: str | Path, expected_dims: tuple[int, int]) -> np.ndarray:
    """Read an 8-bit grayscale PNG as an L channel (0..255 scaled to 0..100)."""
    with Image.open(path) as img:
        gray = np.asarray(img.convert("L"), dtype=np.float64)
    if gray.shape != tuple(expected_dims):
        raise DimensionMismatch(
            f"enhanced L {gray.shape}, expected {tuple(expected_dims)}"
        )
    return gray / 255.0 * 100.0
