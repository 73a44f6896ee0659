import numpy as np

from fieldsynth.geom import (decode_normal_map,
                             height_and_roughness_from_diffuse,
                             normal_from_height)


def test_constant_height_gives_flat_normals():
    img = np.full((16, 16), 0.42)
    out = normal_from_height(img, strength=2.0)
    assert out.shape == (16, 16, 3)
    assert np.all(out == np.array([128, 128, 255], dtype=np.uint8))


def test_horizontal_ramp_uniform_tilt():
    x = np.linspace(0, 1, 32)
    img = np.tile(x, (8, 1))
    out = normal_from_height(img, strength=1.0)
    # every pixel sees the same gradient, so one unique color
    colors = np.unique(out.reshape(-1, 3), axis=0)
    assert len(colors) == 1
    n = decode_normal_map(out)[0, 0]
    assert n[0] < 0  # slope up in +x tilts the normal toward -x
    assert abs(n[1]) < 2 / 255


def hand_gradient(h):
    """Per-pixel central differences (one-sided at borders), by hand."""
    rows, cols = h.shape
    gx = np.zeros_like(h)
    gy = np.zeros_like(h)
    for y in range(rows):
        for x in range(cols):
            if 0 < x < cols - 1:
                gx[y, x] = (h[y, x + 1] - h[y, x - 1]) / 2
            elif x == 0:
                gx[y, x] = h[y, 1] - h[y, 0]
            else:
                gx[y, x] = h[y, x] - h[y, x - 1]
            if 0 < y < rows - 1:
                gy[y, x] = (h[y + 1, x] - h[y - 1, x]) / 2
            elif y == 0:
                gy[y, x] = h[1, x] - h[0, x]
            else:
                gy[y, x] = h[y, x] - h[y - 1, x]
    return gx, gy


def test_3x3_patch_matches_hand_oracle():
    h = np.array([[0.0, 0.5, 0.1],
                  [0.2, 0.4, 0.9],
                  [0.6, 0.3, 0.7]])
    strength = 1.5
    gx, gy = hand_gradient(h)
    n = np.stack([-strength * gx, -strength * gy, np.ones_like(h)], axis=-1)
    n /= np.linalg.norm(n, axis=-1, keepdims=True)
    expected = np.round((n + 1) / 2 * 255).astype(np.uint8)
    assert np.array_equal(normal_from_height(h, strength), expected)


def test_normal_encoding_round_trip():
    rng = np.random.default_rng(0)
    h = rng.uniform(0, 1, (24, 24))
    enc = normal_from_height(h, 2.0)
    dec = decode_normal_map(enc)
    reenc = np.round((dec + 1) / 2 * 255).astype(np.uint8)
    assert np.max(np.abs(enc.astype(int) - reenc.astype(int))) <= 1


class TestHeightRoughnessFromDiffuse:
    def test_uniform_gray(self):
        img = np.full((32, 32, 3), 128, dtype=np.uint8)
        height, roughness = height_and_roughness_from_diffuse(img)
        assert np.allclose(height, 128 / 255, atol=1e-6)
        # featureless input sits at the roughness floor
        assert np.allclose(roughness, roughness.flat[0])
        assert roughness.flat[0] < 0.5

    def test_normalization_endpoints(self):
        white = np.full((8, 8, 3), 255, dtype=np.uint8)
        black = np.zeros((8, 8, 3), dtype=np.uint8)
        h_white, _ = height_and_roughness_from_diffuse(white)
        h_black, _ = height_and_roughness_from_diffuse(black)
        assert np.allclose(h_white, 1.0)
        assert np.allclose(h_black, 0.0)

    def test_checkerboard_rougher_than_uniform(self):
        yy, xx = np.mgrid[0:32, 0:32]
        checker = (((yy // 4 + xx // 4) % 2) * 255).astype(np.uint8)
        checker = np.stack([checker] * 3, axis=-1)
        uniform = np.full((32, 32, 3), 128, dtype=np.uint8)
        _, r_checker = height_and_roughness_from_diffuse(checker)
        _, r_uniform = height_and_roughness_from_diffuse(uniform)
        assert r_checker.mean() > r_uniform.mean()

    def test_empty_image_rejected(self):
        import pytest
        with pytest.raises(ValueError):
            height_and_roughness_from_diffuse(np.zeros((0, 0, 3)))
        with pytest.raises(ValueError):
            normal_from_height(np.zeros((0, 0)))
