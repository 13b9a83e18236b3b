"""Palette construction by Lab histogram peak clustering.

Four stages: per-channel histograms, local peak search with a count
threshold, peak merging (Cartesian product of per-channel peak values,
ranked by assigned-pixel count, capped at t entries), and per-pixel
classification. Every nearest-color decision is exact Euclidean argmin
in Lab with ties broken toward the lowest index, so results are
deterministic and reproducible against a plain linear scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import EmptyPeakSpace

# channel value ranges: L, a, b
CHANNEL_RANGES = ((0.0, 100.0), (-128.0, 127.0), (-128.0, 127.0))
CHANNEL_NAMES = ("L", "a", "b")

DEFAULT_BINS = 100
DEFAULT_RADIUS = 3
DEFAULT_MIN_COUNT = 30
DEFAULT_MAX_ENTRIES = 32


@dataclass
class ChannelHistogram:
    """Histogram of one Lab channel over its full value range."""

    channel: str
    counts: np.ndarray       # (bins,) int64, sums to the pixel total
    bin_centers: np.ndarray  # (bins,) float64, evenly spaced, increasing

    @property
    def bin_count(self) -> int:
        return len(self.counts)


@dataclass
class Palette:
    """Peak colors of an image plus the per-pixel entry assignment.

    ``labels`` holds an entry id per pixel; ``ids`` lists the ids this
    palette describes, aligned with ``colors``/``counts``. A palette
    built from a whole image has ids 0..n-1 and covers every pixel; a
    region palette (see ``segmentation.split_palette``) shares its
    parent's label map and keeps only the ids assigned to its region.
    """

    colors: np.ndarray   # (n, 3) float64, mean Lab of each entry's pixels
    counts: np.ndarray   # (n,) int64, pixels per entry (region-local for splits)
    labels: np.ndarray   # (height, width) int32, entry id per pixel
    ids: np.ndarray = field(default=None)  # (n,) int32 entry ids into labels
    region: str = "all"

    def __post_init__(self) -> None:
        if self.ids is None:
            self.ids = np.arange(len(self.colors), dtype=np.int32)

    def __len__(self) -> int:
        return len(self.colors)


def bin_index(values: np.ndarray, lo: float, hi: float, bins: int) -> np.ndarray:
    """floor((v - lo) / (hi - lo) * bins), clamped into [0, bins-1]."""
    idx = np.floor((np.asarray(values, dtype=np.float64) - lo) / (hi - lo) * bins)
    return np.clip(idx, 0, bins - 1).astype(np.int64)


def build_histograms(lab: np.ndarray, bins: int = DEFAULT_BINS) -> tuple[ChannelHistogram, ...]:
    """Histogram each Lab channel into ``bins`` evenly spaced bins."""
    if bins < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")
    flat = np.asarray(lab, dtype=np.float64).reshape(-1, 3)
    out = []
    for c, (name, (lo, hi)) in enumerate(zip(CHANNEL_NAMES, CHANNEL_RANGES)):
        idx = bin_index(flat[:, c], lo, hi, bins)
        counts = np.bincount(idx, minlength=bins).astype(np.int64)
        centers = lo + (np.arange(bins, dtype=np.float64) + 0.5) * (hi - lo) / bins
        out.append(ChannelHistogram(name, counts, centers))
    return tuple(out)


def find_peaks(hist: ChannelHistogram, radius: int = DEFAULT_RADIUS,
               min_count: int = DEFAULT_MIN_COUNT) -> np.ndarray:
    """Indices of local maxima within +-radius bins, above min_count.

    A bin is a peak when its count exceeds min_count, is >= every count
    in its (edge-truncated) window, and no earlier bin in the window ties
    it; the tie rule keeps only the lowest index of a plateau.
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    counts = hist.counts
    n = len(counts)
    peaks = []
    for i in range(n):
        v = counts[i]
        if v <= min_count:
            continue
        lo = max(0, i - radius)
        hi = min(n - 1, i + radius)
        window = counts[lo:hi + 1]
        if v < window.max():
            continue
        # plateau: an equal count earlier in the window owns the peak
        if np.any(counts[lo:i] == v):
            continue
        peaks.append(i)
    return np.asarray(peaks, dtype=np.int64)


def nearest_color_index(points: np.ndarray, colors: np.ndarray,
                        chunk: int = 1 << 16) -> np.ndarray:
    """Exact nearest-neighbor assignment of Lab points to candidate colors.

    Chunked linear scan; squared Euclidean distance accumulated in
    channel order so results (including tie-breaks toward the lowest
    candidate index) match a naive per-point scan bit for bit.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    cand = np.asarray(colors, dtype=np.float64)
    out = np.empty(len(pts), dtype=np.int32)
    for start in range(0, len(pts), chunk):
        p = pts[start:start + chunk]
        dl = p[:, 0:1] - cand[None, :, 0]
        da = p[:, 1:2] - cand[None, :, 1]
        db = p[:, 2:3] - cand[None, :, 2]
        dist = dl * dl + da * da + db * db
        out[start:start + chunk] = np.argmin(dist, axis=1)
    return out


def merge_peaks(peak_values: tuple[np.ndarray, np.ndarray, np.ndarray],
                lab: np.ndarray, max_entries: int = DEFAULT_MAX_ENTRIES) -> Palette:
    """Merge per-channel peak values into a palette of at most max_entries.

    Candidates are the Cartesian product of per-channel peak values
    (L outer, b innermost). Each pixel goes to its nearest candidate;
    because the candidates form an axis-aligned grid, that argmin
    decomposes into three per-channel argmins, which agrees exactly with
    a full linear scan over the product. Candidates are then ranked by
    assigned-pixel count (ties at the cutoff keep the lower generation
    index), the top max_entries survive, pixels are reassigned to the
    survivors, and each entry color becomes the mean of its pixels.
    Survivors left with zero pixels after reassignment are dropped.
    """
    l_vals, a_vals, b_vals = (np.asarray(v, dtype=np.float64) for v in peak_values)
    if min(len(l_vals), len(a_vals), len(b_vals)) == 0:
        raise EmptyPeakSpace("a channel contributed no peak values")
    if max_entries < 1:
        raise ValueError(f"max_entries must be >= 1, got {max_entries}")

    lab = np.asarray(lab, dtype=np.float64)
    h, w = lab.shape[:2]
    flat = lab.reshape(-1, 3)

    # per-channel nearest peak value; lowest index wins ties, which is the
    # lexicographically (and therefore generation-order) smallest candidate
    per_axis = []
    for c, vals in enumerate((l_vals, a_vals, b_vals)):
        d = flat[:, c:c + 1] - vals[None, :]
        per_axis.append(np.argmin(d * d, axis=1))
    na, nb = len(a_vals), len(b_vals)
    cand_idx = (per_axis[0] * na + per_axis[1]) * nb + per_axis[2]

    n_cand = len(l_vals) * na * nb
    cand_counts = np.bincount(cand_idx, minlength=n_cand)

    # rank by count, descending; stable sort keeps generation order on ties
    order = np.argsort(-cand_counts, kind="stable")
    survivors = order[:max_entries]

    grid = np.stack(np.meshgrid(l_vals, a_vals, b_vals, indexing="ij"), axis=-1)
    survivor_colors = grid.reshape(-1, 3)[survivors]

    labels = nearest_color_index(flat, survivor_colors)

    final_counts = np.bincount(labels, minlength=len(survivors)).astype(np.int64)
    keep = final_counts > 0
    if not np.any(keep):
        raise EmptyPeakSpace("image has no pixels to assign")

    remap = np.cumsum(keep) - 1
    labels = remap[labels].astype(np.int32)
    kept_counts = final_counts[keep]

    # entry color = mean Lab of assigned pixels
    n = int(keep.sum())
    sums = np.zeros((n, 3))
    for c in range(3):
        sums[:, c] = np.bincount(labels, weights=flat[:, c], minlength=n)
    colors = sums / kept_counts[:, None]

    return Palette(colors=colors, counts=kept_counts, labels=labels.reshape(h, w))


def classify_pixels(lab: np.ndarray, palette: Palette) -> np.ndarray:
    """Label every pixel with its nearest palette entry (lowest index on ties)."""
    if len(palette) == 0:
        raise ValueError("palette is empty")
    lab = np.asarray(lab, dtype=np.float64)
    idx = nearest_color_index(lab.reshape(-1, 3), palette.colors)
    return idx.reshape(lab.shape[:2]).astype(np.int32)


def build_palette(lab: np.ndarray, *, bins: int = DEFAULT_BINS,
                  radius: int = DEFAULT_RADIUS, min_count: int = DEFAULT_MIN_COUNT,
                  max_entries: int = DEFAULT_MAX_ENTRIES) -> Palette:
    """Histogram, peak-search, and merge an image into a palette.

    A channel that yields no peak above min_count falls back to its
    single highest-count bin, so low-contrast images still produce a
    palette; only a 0-pixel image raises EmptyPeakSpace.
    """
    lab = np.asarray(lab, dtype=np.float64)
    if lab.size == 0:
        raise EmptyPeakSpace("image has no pixels")
    hists = build_histograms(lab, bins)
    peak_values = []
    for hist in hists:
        idx = find_peaks(hist, radius, min_count)
        if len(idx) == 0:
            idx = np.array([np.argmax(hist.counts)])
        peak_values.append(hist.bin_centers[idx])
    return merge_peaks(tuple(peak_values), lab, max_entries)


def palette_records(palette: Palette) -> list[dict]:
    """Palette entries as JSON-friendly {L, a, b, count} records."""
    return [
        {"L": float(c[0]), "a": float(c[1]), "b": float(c[2]), "count": int(k)}
        for c, k in zip(palette.colors, palette.counts)
    ]


def save_label_map(path: str | Path, palette: Palette) -> None:
    """Write the label map as a 16-bit grayscale PNG (entry id per pixel)."""
    arr = palette.labels.astype(np.uint16)
    Image.fromarray(arr).save(path, format="PNG")
