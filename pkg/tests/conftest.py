"""Shared synthetic test images.

Everything is generated, seeded, and small enough to keep the suite
quick; the corpus() set doubles as the "diverse images" pool for the
acceptance checks.
"""

import numpy as np
import pytest


def solid(h, w, color):
    return np.full((h, w, 3), color, dtype=np.uint8)


def two_color(h, w, left, right):
    """Left half one color, right half another."""
    img = np.empty((h, w, 3), dtype=np.uint8)
    img[:, : w // 2] = left
    img[:, w // 2:] = right
    return img


def stripes(h, w, colors, band=8):
    img = np.empty((h, w, 3), dtype=np.uint8)
    for row in range(h):
        img[row] = colors[(row // band) % len(colors)]
    return img


def checker(h, w, colors, block=4):
    img = np.empty((h, w, 3), dtype=np.uint8)
    for row in range(h):
        for col in range(0, w, block):
            idx = ((row // block) + (col // block)) % len(colors)
            img[row, col:col + block] = colors[idx]
    return img


def gradient(h, w, start, stop, axis=1):
    t = np.linspace(0.0, 1.0, w if axis == 1 else h)
    ramp = np.outer(np.ones(h), t) if axis == 1 else np.outer(t, np.ones(w))
    start = np.asarray(start, dtype=np.float64)
    stop = np.asarray(stop, dtype=np.float64)
    img = start + ramp[..., None] * (stop - start)
    return np.clip(np.round(img), 0, 255).astype(np.uint8)


def blobs(h, w, rng, coarse=6):
    """Smooth low-frequency color field: upscaled coarse noise."""
    seed = rng.integers(0, 256, (coarse, coarse, 3)).astype(np.float64)
    ys = np.linspace(0, coarse - 1, h)
    xs = np.linspace(0, coarse - 1, w)
    y0 = np.floor(ys).astype(int)
    x0 = np.floor(xs).astype(int)
    y1 = np.minimum(y0 + 1, coarse - 1)
    x1 = np.minimum(x0 + 1, coarse - 1)
    fy = (ys - y0)[:, None, None]
    fx = (xs - x0)[None, :, None]
    img = ((1 - fy) * (1 - fx) * seed[y0][:, x0]
           + (1 - fy) * fx * seed[y0][:, x1]
           + fy * (1 - fx) * seed[y1][:, x0]
           + fy * fx * seed[y1][:, x1])
    return np.clip(np.round(img), 0, 255).astype(np.uint8)


def noise(h, w, rng):
    return rng.integers(0, 256, (h, w, 3), dtype=np.uint8)


def scene(h, w, rng):
    """Photo-ish composite: sky gradient over textured ground."""
    img = gradient(h, w, (70, 110, 200), (180, 210, 250), axis=0)
    horizon = h // 2
    ground = blobs(h - horizon, w, rng)
    img[horizon:] = (0.5 * ground + 0.5 * np.array([60, 130, 50])).astype(np.uint8)
    return img


def corpus(size=64, rng_seed=7):
    """At least 20 diverse images: flats, edges, textures, gradients, noise."""
    rng = np.random.default_rng(rng_seed)
    h = w = size
    images = [
        solid(h, w, (128, 128, 128)),
        solid(h, w, (200, 30, 30)),
        solid(h, w, (8, 8, 8)),
        two_color(h, w, (255, 0, 0), (0, 0, 255)),
        two_color(h, w, (20, 90, 40), (240, 220, 180)),
        stripes(h, w, [(255, 80, 0), (0, 160, 255), (90, 200, 60)]),
        stripes(h, w, [(10, 10, 10), (245, 245, 245)], band=4),
        checker(h, w, [(255, 255, 0), (128, 0, 128)]),
        checker(h, w, [(230, 40, 40), (40, 230, 40), (40, 40, 230), (230, 230, 230)]),
        gradient(h, w, (0, 0, 0), (255, 255, 255)),
        gradient(h, w, (255, 0, 0), (0, 0, 255)),
        gradient(h, w, (20, 60, 20), (220, 240, 190), axis=0),
        blobs(h, w, rng),
        blobs(h, w, rng),
        blobs(h, w, rng, coarse=10),
        noise(h, w, rng),
        noise(h, w, rng),
        scene(h, w, rng),
        scene(h, w, rng),
        gradient(h, w, (255, 200, 40), (30, 30, 120)),
        checker(h, w, [(250, 130, 180), (60, 60, 60)], block=8),
        two_color(h, w, (130, 130, 131), (130, 131, 130)),  # near-flat, low contrast
    ]
    return images


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# --- naive metric oracles (plain loops, no shared code with the package) --

def naive_consistency_l(source_lab, result_lab):
    groups = {}
    h, w = source_lab.shape[:2]
    for y in range(h):
        for x in range(w):
            b = int(source_lab[y, x, 0] / 100.0 * 20)
            b = min(max(b, 0), 19)
            groups.setdefault(b, []).append(result_lab[y, x, 0] / 100.0)
    variances = []
    for b in sorted(groups):
        vals = groups[b]
        mean = sum(vals) / len(vals)
        variances.append(sum((v - mean) ** 2 for v in vals) / len(vals))
    return sum(variances) / len(variances)


def naive_consistency_rgb(source_rgb, result_rgb):
    h, w = source_rgb.shape[:2]
    scores = []
    for c in range(3):
        groups = {}
        for y in range(h):
            for x in range(w):
                b = int(source_rgb[y, x, c] / 255.0 * 10)
                b = min(max(b, 0), 9)
                groups.setdefault(b, []).append(float(result_rgb[y, x, c]))
        variances = []
        for b in sorted(groups):
            vals = groups[b]
            mean = sum(vals) / len(vals)
            variances.append(sum((v - mean) ** 2 for v in vals) / len(vals))
        scores.append(sum(variances) / len(variances))
    return sum(scores) / 3.0


def naive_fading(source_lab, result_lab):
    h, w = source_lab.shape[:2]
    out = []
    for c in (1, 2):
        total = 0.0
        for y in range(h):
            for x in range(w):
                loss = abs(source_lab[y, x, c]) - abs(result_lab[y, x, c])
                total += max(0.0, loss)
        out.append(total / (h * w) / 128.0)
    return tuple(out)
