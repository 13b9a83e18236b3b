"""Automatic palette-based color transfer between images.

Builds a palette for the source and reference images by Lab histogram
peak clustering, maps source palette entries onto reference entries per
region (foreground/background), shifts pixels by their entry's
displacement, blends lightness, and scores the result.
"""

from .colorspace import lab_to_rgb, load_image, rgb_to_lab, save_png
from .errors import (
    DimensionMismatch,
    EmptyPeakSpace,
    PaletteTransferError,
    UnreadableMask,
)
from .mapping import PeakMapping, TransferResult
from .metrics import MetricsReport
from .palette import Palette, build_palette
from .pipeline import PipelineRun, TransferConfig, run_transfer, run_transfer_full

__all__ = [
    "DimensionMismatch",
    "EmptyPeakSpace",
    "MetricsReport",
    "Palette",
    "PaletteTransferError",
    "PeakMapping",
    "PipelineRun",
    "TransferConfig",
    "TransferResult",
    "UnreadableMask",
    "build_palette",
    "lab_to_rgb",
    "load_image",
    "rgb_to_lab",
    "run_transfer",
    "run_transfer_full",
    "save_png",
]

__version__ = "0.1.0"
