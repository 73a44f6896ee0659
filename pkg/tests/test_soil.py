import numpy as np
import pytest

from fieldsynth.field import default_soil_patches, synthesize_soil
from fieldsynth.field.soil import load_soil_patches


def adjacent_repeats(grid):
    """Count edge-adjacent tile pairs sharing (patch id, rotation)."""
    rows, cols, _ = grid.shape
    bad = 0
    for y in range(rows):
        for x in range(cols):
            if x + 1 < cols and np.array_equal(grid[y, x], grid[y, x + 1]):
                bad += 1
            if y + 1 < rows and np.array_equal(grid[y, x], grid[y + 1, x]):
                bad += 1
    return bad


def test_two_patches_always_tile_without_repeats():
    patches = default_soil_patches(seed=0, resolution=64)[:2]
    for seed in range(20):
        soil = synthesize_soil((3.0, 2.0), patches, seed=seed,
                               tile_grid=5, resolution=100)
        assert adjacent_repeats(soil.tile_grid) == 0


def test_moisture_amplitude_zero_is_identity():
    patches = default_soil_patches(seed=0, resolution=64)
    soil = synthesize_soil((2.0, 2.0), patches, seed=3,
                           moisture_amplitude=0.0, resolution=64)
    assert np.all(soil.moisture == 1.0)


def test_fixed_seed_reproduces_tiling():
    patches = default_soil_patches(seed=1, resolution=64)
    a = synthesize_soil((2.0, 2.0), patches, seed=9, resolution=64)
    b = synthesize_soil((2.0, 2.0), patches, seed=9, resolution=64)
    assert np.array_equal(a.tile_grid, b.tile_grid)
    assert np.array_equal(a.albedo, b.albedo)
    assert np.array_equal(a.displacement, b.displacement)


def test_single_patch_rejected():
    patches = default_soil_patches(seed=0, resolution=64)[:1]
    with pytest.raises(ValueError, match="at least 2"):
        synthesize_soil((2.0, 2.0), patches, seed=0)


def test_displacement_sampling_interpolates():
    patches = default_soil_patches(seed=0, resolution=64)
    soil = synthesize_soil((2.0, 2.0), patches, seed=5, resolution=64)
    inside = soil.displacement_at(0.3, -0.2)
    assert np.isfinite(inside)
    assert soil.displacement.min() - 1e-9 <= inside <= soil.displacement.max() + 1e-9


def test_tire_track_lowers_displacement():
    patches = default_soil_patches(seed=0, resolution=64)
    flat = synthesize_soil((2.0, 2.0), patches, seed=7, resolution=64,
                           tire_track_prob=0.0)
    tracked = synthesize_soil((2.0, 2.0), patches, seed=7, resolution=64,
                              tire_track_prob=1.0, row_direction_x=0.0)
    assert tracked.has_tire_track and not flat.has_tire_track
    assert tracked.displacement.min() < flat.displacement.min() - 0.005


def test_default_patch_set_spans_presets():
    patches = default_soil_patches(seed=0, resolution=32)
    names = {p.name for p in patches}
    assert {"dry_cracked", "wet_mud"} <= names
    for p in patches:
        assert p.albedo.dtype == np.uint8
        assert 0.0 <= p.displacement.min() and p.displacement.max() <= 1.0


def test_external_patch_set_roundtrip(tmp_path):
    import json
    from fieldsynth.pngio import save_png

    patches = default_soil_patches(seed=2, resolution=32)[:2]
    entries = []
    for p in patches:
        save_png(tmp_path / f"{p.name}_albedo.png", p.albedo)
        save_png(tmp_path / f"{p.name}_disp.png",
                 np.round(p.displacement * 255).astype(np.uint8))
        save_png(tmp_path / f"{p.name}_rough.png",
                 np.round(p.roughness * 255).astype(np.uint8))
        entries.append({"name": p.name, "albedo": f"{p.name}_albedo.png",
                        "displacement": f"{p.name}_disp.png",
                        "roughness": f"{p.name}_rough.png"})
    (tmp_path / "soil_set.json").write_text(json.dumps({"patches": entries}))
    loaded = load_soil_patches(tmp_path)
    assert [p.name for p in loaded] == [p.name for p in patches]
    assert np.array_equal(loaded[0].albedo, patches[0].albedo)
