"""Conversion between 8-bit sRGB images and floating-point CIELAB images.

Images are numpy arrays of shape (height, width, 3): uint8 for sRGB,
float64 for Lab with L in [0, 100] and a, b in [-128, 127]. The forward
path is sRGB decode (IEC 61966-2-1 piecewise) -> linear RGB -> XYZ under
D65 -> CIELAB; everything stays in double precision until PNG encode.
Out-of-gamut values clamp, they never fail.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

# sRGB <-> XYZ under D65 (Bruce Lindbloom's sRGB matrices)
_RGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])
_XYZ_TO_RGB = np.array([
    [3.2404542, -1.5371385, -0.4985314],
    [-0.9692660, 1.8760108, 0.0415560],
    [0.0556434, -0.2040259, 1.0572252],
])

_WHITE = np.array([0.95047, 1.0, 1.08883])

_EPSILON = 216.0 / 24389.0
_KAPPA = 24389.0 / 27.0

A_MIN, A_MAX = -128.0, 127.0
L_MIN, L_MAX = 0.0, 100.0


def rgb_to_lab(rgb: np.ndarray) -> np.ndarray:
    """Convert a uint8 sRGB image (h, w, 3) to a float64 Lab image.

    Total function: every 8-bit color maps to some Lab triple, with L
    clamped to [0, 100] and a, b clamped to [-128, 127].
    """
    srgb = np.asarray(rgb, dtype=np.float64) / 255.0

    linear = np.where(
        srgb > 0.04045,
        ((srgb + 0.055) / 1.055) ** 2.4,
        srgb / 12.92,
    )

    xyz = linear @ _RGB_TO_XYZ.T
    ratio = xyz / _WHITE

    f = np.where(
        ratio > _EPSILON,
        np.cbrt(ratio),
        (_KAPPA * ratio + 16.0) / 116.0,
    )
    fx, fy, fz = f[..., 0], f[..., 1], f[..., 2]

    lab = np.empty_like(f)
    lab[..., 0] = np.clip(116.0 * fy - 16.0, L_MIN, L_MAX)
    lab[..., 1] = np.clip(500.0 * (fx - fy), A_MIN, A_MAX)
    lab[..., 2] = np.clip(200.0 * (fy - fz), A_MIN, A_MAX)
    return lab


def lab_to_rgb(lab: np.ndarray) -> np.ndarray:
    """Convert a float64 Lab image (h, w, 3) back to uint8 sRGB.

    Out-of-gamut channels clamp to [0, 255]; quantization rounds half up.
    """
    lab = np.asarray(lab, dtype=np.float64)
    L, a, b = lab[..., 0], lab[..., 1], lab[..., 2]

    fy = (L + 16.0) / 116.0
    fx = fy + a / 500.0
    fz = fy - b / 200.0

    xyz = np.empty_like(lab)
    xyz[..., 0] = np.where(fx ** 3 > _EPSILON, fx ** 3, (116.0 * fx - 16.0) / _KAPPA)
    xyz[..., 1] = np.where(L > _KAPPA * _EPSILON, fy ** 3, L / _KAPPA)
    xyz[..., 2] = np.where(fz ** 3 > _EPSILON, fz ** 3, (116.0 * fz - 16.0) / _KAPPA)
    xyz *= _WHITE

    linear = np.clip(xyz @ _XYZ_TO_RGB.T, 0.0, 1.0)
    srgb = np.where(
        linear > 0.0031308,
        1.055 * linear ** (1.0 / 2.4) - 0.055,
        12.92 * linear,
    )

    # round half up, not banker's rounding
    return np.clip(np.floor(srgb * 255.0 + 0.5), 0.0, 255.0).astype(np.uint8)


def clamp_lab(lab: np.ndarray) -> np.ndarray:
    """Clamp an arbitrary float array into the Lab box (L 0..100, a/b -128..127)."""
    out = np.asarray(lab, dtype=np.float64).copy()
    out[..., 0] = np.clip(out[..., 0], L_MIN, L_MAX)
    out[..., 1:] = np.clip(out[..., 1:], A_MIN, A_MAX)
    return out


def load_image(path: str | Path) -> np.ndarray:
    """Decode a PNG or JPEG file into a uint8 RGB array (h, w, 3)."""
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"))


def save_png(path: str | Path, rgb: np.ndarray) -> None:
    """Encode a uint8 RGB array as PNG (the only output format)."""
    arr = np.asarray(rgb, dtype=np.uint8)
    Image.fromarray(arr, mode="RGB").save(path, format="PNG")
