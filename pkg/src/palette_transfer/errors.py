"""Exceptions shared across the pipeline stages."""


class PaletteTransferError(Exception):
    """Base class for all errors raised by this package."""


class EmptyPeakSpace(PaletteTransferError):
    """No histogram peaks could be produced, even via fallback (0-pixel image)."""


class DimensionMismatch(PaletteTransferError):
    """Two images/masks that must share dimensions do not."""


class UnreadableMask(PaletteTransferError):
    """A mask file could not be opened or decoded."""
