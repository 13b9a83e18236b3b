"""Quantitative scores for a (source, result) pair.

Consistency: pixels similar in the source should stay similar in the
result. Source pixels are binned (L: 20 bins over 0..100; each RGB
channel: 10 bins over 0..255) and the score is the mean population
variance of the result values within each non-empty bin, L normalized
to [0, 1], RGB kept on its 0..255 scale. Fading: mean clamped loss of
chroma magnitude (|a|, |b|) per pixel, normalized by 128; values near 0
mean no drift toward grayscale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

L_BINS = 20
RGB_BINS = 10
CHROMA_SCALE = 128.0


@dataclass
class MetricsReport:
    consistency_l: float
    consistency_rgb: float
    fading_a: float
    fading_b: float

    def to_dict(self) -> dict[str, float]:
        return {
            "consistency_l": self.consistency_l,
            "consistency_rgb": self.consistency_rgb,
            "fading_a": self.fading_a,
            "fading_b": self.fading_b,
        }


def _check_dims(source: np.ndarray, result: np.ndarray) -> None:
    if source.shape != result.shape:
        raise DimensionMismatch(f"source {source.shape} vs result {result.shape}")


def _mean_bin_variance(bins: np.ndarray, values: np.ndarray, n_bins: int) -> float:
    """Mean population variance of ``values`` grouped by ``bins``.

    Two-pass per-bin variance; empty bins are excluded, single-pixel
    bins contribute 0.
    """
    counts = np.bincount(bins, minlength=n_bins)
    sums = np.bincount(bins, weights=values, minlength=n_bins)
    nonempty = counts > 0
    means = np.zeros(n_bins)
    means[nonempty] = sums[nonempty] / counts[nonempty]
    dev = values - means[bins]
    sq = np.bincount(bins, weights=dev * dev, minlength=n_bins)
    return float(np.mean(sq[nonempty] / counts[nonempty]))


def consistency_l(source_lab: np.ndarray, result_lab: np.ndarray) -> float:
    """Mean within-bin variance of result L (scaled to 0..1) over 20 source-L bins."""
    source_lab = np.asarray(source_lab, dtype=np.float64)
    result_lab = np.asarray(result_lab, dtype=np.float64)
    _check_dims(source_lab, result_lab)
    src = source_lab[..., 0].ravel()
    res = result_lab[..., 0].ravel() / 100.0
    bins = np.clip(np.floor(src / 100.0 * L_BINS), 0, L_BINS - 1).astype(np.int64)
    return _mean_bin_variance(bins, res, L_BINS)


def consistency_rgb(source_rgb: np.ndarray, result_rgb: np.ndarray) -> float:
    """Within-bin variance of result RGB over 10 source bins, averaged over channels."""
    source_rgb = np.asarray(source_rgb)
    result_rgb = np.asarray(result_rgb)
    _check_dims(source_rgb, result_rgb)
    scores = []
    for c in range(3):
        src = source_rgb[..., c].ravel().astype(np.float64)
        res = result_rgb[..., c].ravel().astype(np.float64)
        bins = np.clip(np.floor(src / 255.0 * RGB_BINS), 0, RGB_BINS - 1).astype(np.int64)
        scores.append(_mean_bin_variance(bins, res, RGB_BINS))
    return float(np.mean(scores))


def fading_rate(source_lab: np.ndarray, result_lab: np.ndarray) -> tuple[float, float]:
    """Mean clamped chroma-magnitude loss per pixel for a and b, over 128.

    Loss at a pixel is max(0, |source| - |result|); a result more
    saturated than the source loses nothing.
    """
    source_lab = np.asarray(source_lab, dtype=np.float64)
    result_lab = np.asarray(result_lab, dtype=np.float64)
    _check_dims(source_lab, result_lab)
    rates = []
    for c in (1, 2):
        loss = np.maximum(0.0, np.abs(source_lab[..., c]) - np.abs(result_lab[..., c]))
        rates.append(float(loss.mean() / CHROMA_SCALE))
    return rates[0], rates[1]


def build_report(source_rgb: np.ndarray, result_rgb: np.ndarray,
                 source_lab: np.ndarray | None = None,
                 result_lab: np.ndarray | None = None) -> MetricsReport:
    """Score a pair; Lab images are derived from the RGB pair when not given."""
    from .colorspace import rgb_to_lab

    if source_lab is None:
        source_lab = rgb_to_lab(source_rgb)
    if result_lab is None:
        result_lab = rgb_to_lab(result_rgb)
    f_a, f_b = fading_rate(source_lab, result_lab)
    return MetricsReport(
        consistency_l=consistency_l(source_lab, result_lab),
        consistency_rgb=consistency_rgb(source_rgb, result_rgb),
        fading_a=f_a,
        fading_b=f_b,
    )
