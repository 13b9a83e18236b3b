"""Palette-to-palette color mapping and the per-pixel transfer.

A source palette entry first gets the nearest reference entry in Lab
(chromatic aberration control). Many-to-one assignments are resolved in
favor of the most populous source entry; the displaced entries receive
inverse-distance-weighted blends of the resolved targets instead
(consistency keeping). Pixels then move by their entry's displacement
vector: f(p) = f(entry) + p - entry, applied to a and b only; the mapped
L component is returned separately for the lighting stage.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .colorspace import A_MAX, A_MIN
from .palette import (
    DEFAULT_BINS,
    DEFAULT_MAX_ENTRIES,
    DEFAULT_MIN_COUNT,
    DEFAULT_RADIUS,
    Palette,
    build_palette,
    nearest_color_index,
)
from .errors import DimensionMismatch
from .segmentation import default_mask, split_palette

PROV_DIRECT = "direct"
PROV_CONFLICT_WINNER = "conflict_winner"
PROV_INTERPOLATED = "interpolated"

DEFAULT_NEIGHBORS = 3


@dataclass
class PeakMapping:
    """Total mapping from source palette entries to target Lab colors.

    ``ref_indices[i]`` is the reference entry backing entry i's target,
    or -1 when the target was interpolated or is an identity fallback.
    Entries with direct/conflict_winner provenance never share a
    reference entry.
    """

    targets: np.ndarray       # (n, 3) float64 Lab
    provenance: list[str]     # per entry: direct / conflict_winner / interpolated
    ref_indices: np.ndarray   # (n,) int64

    def __len__(self) -> int:
        return len(self.targets)


@dataclass
class TransferResult:
    """Output of ``transfer``: the recolored Lab image plus provenance.

    ``lab`` carries the transferred a/b channels with L untouched;
    ``mapped_l`` is the L component of the per-pixel mapping, which the
    lighting stage blends in separately. The merged entry mapping and
    both palettes are kept for debugging dumps.
    """

    lab: np.ndarray        # (h, w, 3) a/b transferred, L = source L
    mapped_l: np.ndarray   # (h, w) mapped L component, unclamped
    mapping: PeakMapping
    source_palette: Palette
    reference_palette: Palette


def nearest_target(source_color: np.ndarray, ref_palette: Palette) -> tuple[int, np.ndarray]:
    """Nearest reference entry to a source color (lowest index on ties)."""
    if len(ref_palette) == 0:
        raise ValueError("reference palette is empty")
    idx = int(nearest_color_index(np.asarray(source_color).reshape(1, 3),
                                  ref_palette.colors)[0])
    return idx, ref_palette.colors[idx].copy()


def resolve_conflicts(assignments: np.ndarray,
                      source_palette: Palette) -> tuple[dict[int, int], list[int]]:
    """Resolve many-to-one entry assignments by pixel count.

    For every reference entry claimed by several source entries, the
    claimant with the most pixels keeps it (ties: lowest source index);
    the rest become pending. Returns (winner source -> reference index,
    sorted pending source indices).
    """
    claimants: dict[int, list[int]] = defaultdict(list)
    for src, ref in enumerate(np.asarray(assignments, dtype=np.int64)):
        claimants[int(ref)].append(src)

    winners: dict[int, int] = {}
    pending: list[int] = []
    for ref, group in claimants.items():
        best = max(group, key=lambda i: (source_palette.counts[i], -i))
        winners[best] = ref
        pending.extend(i for i in group if i != best)
    return winners, sorted(pending)


def idw_weights(distances: np.ndarray) -> np.ndarray:
    """Inverse-distance weights, normalized to sum to 1. All distances > 0."""
    inv = 1.0 / np.asarray(distances, dtype=np.float64)
    return inv / inv.sum()


def interpolate_pending(pending: Sequence[int],
                        winners: Mapping[int, np.ndarray],
                        source_palette: Palette,
                        neighbors: int = DEFAULT_NEIGHBORS) -> dict[int, np.ndarray]:
    """Give each pending entry a target blended from nearby winners.

    ``winners`` maps winner source indices to their target colors. The
    min(neighbors, len(winners)) winners nearest to a pending entry (by
    Lab distance between the source colors) contribute with
    inverse-distance weights; a winner at distance zero supplies its
    target outright.
    """
    winner_ids = sorted(winners)
    if not winner_ids:
        raise ValueError("no resolved mappings to interpolate from")
    winner_colors = source_palette.colors[winner_ids]

    k = min(neighbors, len(winner_ids))
    targets: dict[int, np.ndarray] = {}
    for q in pending:
        diff = winner_colors - source_palette.colors[q]
        dist = np.sqrt(np.sum(diff * diff, axis=1))
        order = np.argsort(dist, kind="stable")[:k]
        if dist[order[0]] == 0.0:
            targets[q] = np.array(winners[winner_ids[order[0]]], dtype=np.float64)
            continue
        weights = idw_weights(dist[order])
        blend = np.zeros(3)
        for w, j in zip(weights, order):
            blend += w * np.asarray(winners[winner_ids[j]], dtype=np.float64)
        targets[q] = blend
    return targets


def build_region_mapping(src_palette: Palette, ref_palette: Palette,
                         neighbors: int = DEFAULT_NEIGHBORS) -> PeakMapping:
    """Map every source entry of one region to a reference target color.

    Composes nearest-entry search, conflict resolution, and pending
    interpolation. An empty reference palette yields the identity
    mapping (each entry keeps its own color).
    """
    n = len(src_palette)
    if n == 0:
        raise ValueError("source palette is empty")
    if len(ref_palette) == 0:
        return PeakMapping(
            targets=src_palette.colors.copy(),
            provenance=[PROV_DIRECT] * n,
            ref_indices=np.full(n, -1, dtype=np.int64),
        )

    raw = nearest_color_index(src_palette.colors, ref_palette.colors).astype(np.int64)
    winners, pending = resolve_conflicts(raw, src_palette)
    contested = np.bincount(raw, minlength=len(ref_palette)) > 1

    targets = np.empty((n, 3))
    provenance = [PROV_INTERPOLATED] * n
    ref_indices = np.full(n, -1, dtype=np.int64)
    for src, ref in winners.items():
        targets[src] = ref_palette.colors[ref]
        ref_indices[src] = ref
        provenance[src] = PROV_CONFLICT_WINNER if contested[ref] else PROV_DIRECT

    if pending:
        winner_targets = {s: targets[s] for s in winners}
        for q, color in interpolate_pending(pending, winner_targets,
                                            src_palette, neighbors).items():
            targets[q] = color
    return PeakMapping(targets, provenance, ref_indices)


def apply_mapping(lab: np.ndarray, labels: np.ndarray, mapping: PeakMapping,
                  src_palette: Palette) -> tuple[np.ndarray, np.ndarray]:
    """Shift every pixel by its palette entry's displacement vector.

    Returns the output Lab image, whose a/b channels are the mapped
    values clamped into [-128, 127] and whose L channel is untouched,
    plus the unclamped mapped L component as a separate (h, w) array.
    """
    lab = np.asarray(lab, dtype=np.float64)
    delta = mapping.targets - src_palette.colors
    mapped = lab + delta[labels]

    out = lab.copy()
    out[..., 1:] = np.clip(mapped[..., 1:], A_MIN, A_MAX)
    return out, mapped[..., 0]


def transfer(source_lab: np.ndarray, reference_lab: np.ndarray,
             src_mask: np.ndarray | None = None,
             ref_mask: np.ndarray | None = None, *,
             bins: int = DEFAULT_BINS, radius: int = DEFAULT_RADIUS,
             min_count: int = DEFAULT_MIN_COUNT,
             max_entries: int = DEFAULT_MAX_ENTRIES,
             neighbors: int = DEFAULT_NEIGHBORS) -> TransferResult:
    """Palette-based color transfer from a reference image onto a source.

    Palettes are built for both images and split by mask; foreground
    entries map against foreground reference entries, background against
    background. A source region whose reference counterpart is empty
    maps against the whole reference palette instead.
    """
    source_lab = np.asarray(source_lab, dtype=np.float64)
    reference_lab = np.asarray(reference_lab, dtype=np.float64)
    src_mask = default_mask(source_lab.shape[:2]) if src_mask is None else np.asarray(src_mask, dtype=bool)
    ref_mask = default_mask(reference_lab.shape[:2]) if ref_mask is None else np.asarray(ref_mask, dtype=bool)
    if src_mask.shape != source_lab.shape[:2]:
        raise DimensionMismatch(f"source mask {src_mask.shape} vs image {source_lab.shape[:2]}")
    if ref_mask.shape != reference_lab.shape[:2]:
        raise DimensionMismatch(f"reference mask {ref_mask.shape} vs image {reference_lab.shape[:2]}")

    src_pal = build_palette(source_lab, bins=bins, radius=radius,
                            min_count=min_count, max_entries=max_entries)
    ref_pal = build_palette(reference_lab, bins=bins, radius=radius,
                            min_count=min_count, max_entries=max_entries)

    src_fg, src_bg = split_palette(src_pal, src_mask)
    ref_fg, ref_bg = split_palette(ref_pal, ref_mask)

    n = len(src_pal)
    targets = np.empty((n, 3))
    provenance: list[str] = [""] * n
    ref_indices = np.full(n, -1, dtype=np.int64)

    for src_region, ref_region in ((src_fg, ref_fg), (src_bg, ref_bg)):
        if len(src_region) == 0:
            continue
        if len(ref_region) == 0:
            ref_region = ref_pal  # empty-region fallback: whole reference palette
        region_map = build_region_mapping(src_region, ref_region, neighbors)
        targets[src_region.ids] = region_map.targets
        mapped = region_map.ref_indices >= 0
        ref_indices[src_region.ids[mapped]] = ref_region.ids[region_map.ref_indices[mapped]]
        for local, entry in enumerate(src_region.ids):
            provenance[entry] = region_map.provenance[local]

    mapping = PeakMapping(targets, provenance, ref_indices)
    out, mapped_l = apply_mapping(source_lab, src_pal.labels, mapping, src_pal)
    return TransferResult(out, mapped_l, mapping, src_pal, ref_pal)


def mapping_records(result: TransferResult) -> list[dict]:
    """Merged mapping as JSON-friendly records for --dump-mapping."""
    pal, mapping = result.source_palette, result.mapping
    return [
        {
            "source": [float(v) for v in pal.colors[i]],
            "target": [float(v) for v in mapping.targets[i]],
            "provenance": mapping.provenance[i],
            "pixel_count": int(pal.counts[i]),
        }
        for i in range(len(pal))
    ]
