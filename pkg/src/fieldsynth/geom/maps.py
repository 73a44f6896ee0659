"""Procedural derivation of secondary material maps from a diffuse map."""

from __future__ import annotations

import numpy as np
from scipy.ndimage import gaussian_filter


def _as_float01(img: np.ndarray) -> np.ndarray:
    arr = np.asarray(img)
    if arr.size == 0:
        raise ValueError("empty image")
    if arr.dtype == np.uint8:
        return arr.astype(np.float64) / 255.0
    return arr.astype(np.float64)


def normal_from_height(height: np.ndarray, strength: float = 1.0) -> np.ndarray:
    """Tangent-space normals from central-difference height gradients.

    Returns an 8-bit RGB image encoded rgb = (n + 1) / 2; a constant
    height field maps to (128, 128, 255) everywhere.
    """
    h = _as_float01(height)
    if h.ndim != 2:
        raise ValueError("height must be a single-channel image")
    gy, gx = np.gradient(h)
    n = np.stack([-strength * gx, -strength * gy, np.ones_like(h)], axis=-1)
    n /= np.linalg.norm(n, axis=-1, keepdims=True)
    return np.round((n + 1.0) * 0.5 * 255.0).astype(np.uint8)


def decode_normal_map(rgb: np.ndarray) -> np.ndarray:
    n = rgb.astype(np.float64) / 255.0 * 2.0 - 1.0
    return n / np.linalg.norm(n, axis=-1, keepdims=True)


def luminance(rgb: np.ndarray) -> np.ndarray:
    arr = _as_float01(rgb)
    if arr.ndim == 2:
        return arr
    return arr[..., 0] * 0.2126 + arr[..., 1] * 0.7152 + arr[..., 2] * 0.0722


def height_and_roughness_from_diffuse(diffuse: np.ndarray,
                                      smooth_sigma: float = 1.5,
                                      contrast_sigma: float = 3.0,
                                      roughness_floor: float = 0.35,
                                      contrast_gain: float = 6.0):
    """Height and roughness maps in [0, 1] derived from a diffuse map.

    Height is smoothed luminance: bright texels read as raised. Roughness
    starts at a floor for featureless input and rises with local contrast,
    so busy regions of the diffuse map render matte while flat regions
    stay glossier.
    """
    lum = luminance(diffuse)
    height = np.clip(gaussian_filter(lum, smooth_sigma), 0.0, 1.0)
    local_mean = gaussian_filter(lum, contrast_sigma)
    contrast = gaussian_filter(np.abs(lum - local_mean), contrast_sigma)
    roughness = np.clip(roughness_floor + contrast_gain * contrast, 0.0, 1.0)
    return height, roughness
