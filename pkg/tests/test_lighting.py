"""Lightness blending and enhancement checks."""

import numpy as np
import pytest
from PIL import Image

from palette_transfer import lighting
from palette_transfer.errors import DimensionMismatch


# --- blending ------------------------------------------------------------

def test_blend_hand_value():
    out = lighting.blend_l(np.array([40.0]), np.array([80.0]), alpha=0.3)
    assert out[0] == pytest.approx(52.0, abs=1e-12)


def test_blend_endpoints_are_exact():
    rng = np.random.default_rng(0)
    orig = rng.uniform(0, 100, (15, 15))
    mapped = rng.uniform(-20, 120, (15, 15))
    assert np.array_equal(lighting.blend_l(orig, mapped, alpha=0.0), orig)
    assert np.array_equal(
        lighting.blend_l(orig, mapped, alpha=1.0), np.clip(mapped, 0, 100))


def test_blend_clamps_to_valid_range():
    out = lighting.blend_l(np.array([90.0, 5.0]), np.array([150.0, -80.0]),
                           alpha=0.5)
    assert out.tolist() == [100.0, 0.0]


def test_blend_is_monotone_in_alpha():
    orig = np.array([20.0])
    mapped = np.array([80.0])
    values = [lighting.blend_l(orig, mapped, a)[0]
              for a in np.linspace(0, 1, 11)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_blend_validates_alpha_and_shape():
    with pytest.raises(ValueError):
        lighting.blend_l(np.zeros(2), np.zeros(2), alpha=1.5)
    with pytest.raises(DimensionMismatch):
        lighting.blend_l(np.zeros(2), np.zeros(3), alpha=0.5)


def test_lighting_params_validation():
    lighting.LightingParams(alpha=0.0)
    lighting.LightingParams(alpha=1.0)
    with pytest.raises(ValueError):
        lighting.LightingParams(alpha=-0.1)


# --- enhancement ---------------------------------------------------------

def test_enhance_median_25_uses_gamma_half():
    # gamma = log(0.5) / log(0.25) = 0.5 exactly; 100 * 0.25^0.5 = 50.
    out = lighting.enhance_l(np.full((4, 4), 25.0))
    assert out == pytest.approx(np.full((4, 4), 50.0), abs=1e-12)


def test_enhance_median_50_is_identity():
    arr = np.array([[10.0, 50.0], [50.0, 90.0]])
    out = lighting.enhance_l(arr)
    assert np.array_equal(out, arr)
    assert out is not arr  # a copy, not the same buffer


def test_enhance_gamma_clamps_high_median():
    # Median 97 would need gamma ~22.8; it is clamped to 2.0.
    out = lighting.enhance_l(np.full((3, 3), 97.0))
    assert out == pytest.approx(np.full((3, 3), 100.0 * 0.97 ** 2), abs=1e-9)


def test_enhance_gamma_clamps_low_median():
    # Median 1 would need gamma ~0.15; it is clamped to 0.5.
    out = lighting.enhance_l(np.full((3, 3), 1.0))
    assert out == pytest.approx(np.full((3, 3), 100.0 * 0.1), abs=1e-9)


def test_enhance_degenerate_medians_are_identity():
    assert np.array_equal(lighting.enhance_l(np.zeros((2, 2))), np.zeros((2, 2)))
    full = np.full((2, 2), 100.0)
    assert np.array_equal(lighting.enhance_l(full), full)


def test_enhance_preserves_order_and_range(rng):
    values = np.sort(rng.uniform(0, 100, 50))
    out = lighting.enhance_l(values)
    assert np.all(np.diff(out) >= 0)
    assert out.min() >= 0.0 and out.max() <= 100.0


def test_enhance_brightens_dark_images(rng):
    dark = rng.uniform(5, 40, (10, 10))
    out = lighting.enhance_l(dark)
    assert np.median(out) > np.median(dark)


# --- external enhanced L -------------------------------------------------

def test_load_l_channel_scales_to_100(tmp_path):
    arr = np.array([[0, 51], [255, 102]], dtype=np.uint8)
    path = tmp_path / "l.png"
    Image.fromarray(arr).save(path)
    out = lighting.load_l_channel(str(path), (2, 2))
    assert np.allclose(out, [[0.0, 20.0], [100.0, 40.0]])


def test_load_l_channel_checks_dims(tmp_path):
    path = tmp_path / "l.png"
    Image.fromarray(np.zeros((3, 3), dtype=np.uint8)).save(path)
    with pytest.raises(DimensionMismatch):
        lighting.load_l_channel(str(path), (3, 4))
