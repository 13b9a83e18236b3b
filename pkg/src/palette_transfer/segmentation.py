"""Foreground/background mask ingestion and palette splitting.

Masks come from an external segmenter (any tool that can emit an 8-bit
grayscale PNG); this module only loads them and splits palettes by
region. When no mask is supplied the whole image counts as foreground.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .errors import DimensionMismatch, UnreadableMask
from .palette import Palette

FOREGROUND_THRESHOLD = 128  # >= is foreground; robust to anti-aliased masks

REGION_FOREGROUND = "foreground"
REGION_BACKGROUND = "background"


def load_mask(path: str | Path, expected_dims: tuple[int, int]) -> np.ndarray:
    """Load an 8-bit grayscale PNG as a boolean mask (True = foreground).

    ``expected_dims`` is (height, width) of the image the mask belongs
    to; a mismatch raises DimensionMismatch, an unreadable file raises
    UnreadableMask.
    """
    try:
        with Image.open(path) as img:
            gray = np.asarray(img.convert("L"))
    except (OSError, ValueError) as exc:
        raise UnreadableMask(f"cannot read mask {path}: {exc}") from exc
    if gray.shape != tuple(expected_dims):
        raise DimensionMismatch(
            f"mask {path} is {gray.shape}, expected {tuple(expected_dims)}"
        )
    return gray >= FOREGROUND_THRESHOLD


def default_mask(dims: tuple[int, int]) -> np.ndarray:
    """All-foreground mask for images without a usable separation."""
    return np.ones(dims, dtype=bool)


def split_palette(palette: Palette, mask: np.ndarray) -> tuple[Palette, Palette]:
    """Split a palette into foreground and background palettes.

    Each entry goes to the region holding the majority of its pixels
    (ties go to foreground); counts are re-counted within the region.
    Entries ending up with zero pixels in their region are dropped, so
    together the two palettes partition the input entries.
    """
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != palette.labels.shape:
        raise DimensionMismatch(
            f"mask is {mask.shape}, label map is {palette.labels.shape}"
        )

    n_ids = int(palette.ids.max()) + 1 if len(palette) else 0
    fg_counts = np.bincount(palette.labels[mask].ravel(), minlength=n_ids)
    fg_per_entry = fg_counts[palette.ids]
    bg_per_entry = palette.counts - fg_per_entry

    to_fg = fg_per_entry >= bg_per_entry  # tie -> foreground

    def subset(select: np.ndarray, counts: np.ndarray, region: str) -> Palette:
        keep = select & (counts > 0)
        return Palette(
            colors=palette.colors[keep],
            counts=counts[keep].astype(np.int64),
            labels=palette.labels,
            ids=palette.ids[keep],
            region=region,
        )

    fg = subset(to_fg, fg_per_entry, REGION_FOREGROUND)
    bg = subset(~to_fg, bg_per_entry, REGION_BACKGROUND)
    return fg, bg
