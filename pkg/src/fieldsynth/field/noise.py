"""Seeded gradient noise and fractal sums for soil variation and debris."""

from __future__ import annotations

import numpy as np

from ..seeding import mix

# 4 axis + 4 normalized diagonal gradients; bounds one octave to +-sqrt(2)/2
_SQ = np.sqrt(0.5)
_GRADS = np.array([
    (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0),
    (_SQ, _SQ), (-_SQ, _SQ), (_SQ, -_SQ), (-_SQ, -_SQ),
])


def _permutation(seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed & ((1 << 64) - 1)))
    p = rng.permutation(256).astype(np.int64)
    return np.concatenate([p, p])


def _fade(t):
    return t * t * t * (t * (t * 6.0 - 15.0) + 10.0)


def perlin2d(points, seed: int) -> np.ndarray:
    """Classic 2D gradient noise, vectorized; zero at integer lattice points.

    Scaled so a single octave spans [-1, 1].
    """
    p = np.asarray(points, dtype=np.float64)
    scalar = p.ndim == 1
    pts = np.atleast_2d(p)
    perm = _permutation(seed)

    xi = np.floor(pts[:, 0]).astype(np.int64)
    yi = np.floor(pts[:, 1]).astype(np.int64)
    xf = pts[:, 0] - xi
    yf = pts[:, 1] - yi
    xi &= 255
    yi &= 255

    def grad_dot(hx, hy, dx, dy):
        h = perm[perm[hx] + hy] & 7
        g = _GRADS[h]
        return g[:, 0] * dx + g[:, 1] * dy

    n00 = grad_dot(xi, yi, xf, yf)
    n10 = grad_dot(xi + 1, yi, xf - 1.0, yf)
    n01 = grad_dot(xi, yi + 1, xf, yf - 1.0)
    n11 = grad_dot(xi + 1, yi + 1, xf - 1.0, yf - 1.0)

    u = _fade(xf)
    v = _fade(yf)
    nx0 = n00 + u * (n10 - n00)
    nx1 = n01 + u * (n11 - n01)
    val = (nx0 + v * (nx1 - nx0)) * np.sqrt(2.0)
    return float(val[0]) if scalar else val


def fbm_perlin(points, octaves: int, lacunarity: float = 2.0,
               gain: float = 0.5, seed: int = 0,
               base_frequency: float = 1.0) -> np.ndarray:
    """Fractal sum of seeded gradient-noise octaves, clipped to [-1, 1].

    The first octave has unit amplitude and each further octave is scaled
    by `gain`, so shrinking the gain concentrates the signal in the
    smooth base octave. Each octave uses its own derived permutation.
    """
    if octaves < 1:
        raise ValueError("octaves must be >= 1")
    p = np.asarray(points, dtype=np.float64)
    scalar = p.ndim == 1
    pts = np.atleast_2d(p)

    total = np.zeros(len(pts))
    freq = base_frequency
    amp = 1.0
    for octave in range(octaves):
        total += amp * perlin2d(pts * freq, mix(seed, "octave", octave))
        freq *= lacunarity
        amp *= gain
    out = np.clip(total, -1.0, 1.0)
    return float(out[0]) if scalar else out


def fbm_grid(shape, extent, octaves: int, lacunarity: float = 2.0,
             gain: float = 0.5, seed: int = 0,
             base_frequency: float = 1.0) -> np.ndarray:
    """fbm sampled on a (rows, cols) pixel grid covering `extent` meters."""
    rows, cols = shape
    ys = (np.arange(rows) + 0.5) / rows * extent[1]
    xs = (np.arange(cols) + 0.5) / cols * extent[0]
    gx, gy = np.meshgrid(xs, ys)
    pts = np.stack([gx.ravel(), gy.ravel()], axis=1)
    return fbm_perlin(pts, octaves, lacunarity, gain, seed,
                      base_frequency).reshape(rows, cols)
