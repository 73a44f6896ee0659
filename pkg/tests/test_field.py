import numpy as np
import pytest

from fieldsynth.field import (FieldLayout, LayoutError, compose_field,
                              sample_layout, scatter_debris)


def make_layout(**kw):
    base = dict(row_spacing=0.5, plant_spacing=0.08, rows=6,
                plants_per_row=25, dormancy_fraction=0.125, weed_count=4,
                weed_placement="both", origin=(-1.5, -1.0), extent=(3.0, 2.0))
    base.update(kw)
    return FieldLayout(**base)


def test_sampled_layouts_respect_envelopes():
    rng = np.random.default_rng(0)
    for _ in range(200):
        lay = sample_layout((3.0, 2.0), rng)
        assert 0.38 <= lay.row_spacing <= 0.76
        assert 0.05 <= lay.plant_spacing <= 0.10
        assert 0.10 <= lay.dormancy_fraction <= 0.15
        assert 1 <= lay.weed_count <= 10


def test_out_of_envelope_rejected_without_override():
    rng = np.random.default_rng(1)
    with pytest.raises(LayoutError, match="row_spacing"):
        sample_layout((3.0, 2.0), rng, row_spacing_range=(0.2, 0.3))
    lay = sample_layout((3.0, 2.0), np.random.default_rng(1),
                        row_spacing_range=(0.2, 0.3),
                        allow_range_override=True)
    assert lay.row_spacing < 0.38


def test_extent_too_small_for_one_row():
    rng = np.random.default_rng(2)
    with pytest.raises(LayoutError, match="too small"):
        sample_layout((0.2, 2.0), rng)


def test_zero_dormancy_fills_every_slot(small_library, small_soil):
    lay = make_layout()
    scene = compose_field(lay, small_soil, small_library,
                          np.random.default_rng(3), dormancy_override=0.0)
    crops = [p for p in scene.plants if p.semantic_class == "crop"]
    assert len(crops) == lay.rows * lay.plants_per_row
    assert scene.dormant_count == 0


def test_pooled_dormancy_statistics(small_library, small_soil):
    # pooled missing fraction over many fields obeys binomial bounds
    total_slots = 0
    missing = 0
    lay = make_layout(weed_count=1)
    for seed in range(300):
        scene = compose_field(lay, small_soil, small_library,
                              np.random.default_rng(seed))
        total_slots += lay.rows * lay.plants_per_row
        missing += scene.dormant_count
    frac = missing / total_slots
    assert 0.10 <= frac <= 0.15
    sigma = np.sqrt(0.125 * 0.875 / total_slots)
    assert abs(frac - 0.125) <= 3 * sigma


def test_between_row_weeds_stay_off_row_lines(small_library, small_soil):
    lay = make_layout(weed_placement="between_rows", weed_count=10)
    row_x = np.array([-1.5 + (r + 0.5) * 0.5 for r in range(6)])
    for seed in range(10):
        scene = compose_field(lay, small_soil, small_library,
                              np.random.default_rng(seed))
        for p in scene.plants:
            if p.semantic_class == "crop":
                continue
            d = np.abs(row_x - p.position[0]).min()
            lib = small_library[p.species][p.library_index]
            assert d > lib.footprint_radius * 0.5
            assert d > 0.5 / 3 - 1e-9  # middle third of the gap


def test_crop_min_spacing_invariant(small_library, small_soil):
    lay = make_layout()
    for seed in range(5):
        scene = compose_field(lay, small_soil, small_library,
                              np.random.default_rng(seed))
        by_row = {}
        for p in scene.plants:
            if p.row >= 0:
                by_row.setdefault(p.row, []).append(p.position[1])
        for ys in by_row.values():
            ys = sorted(ys)
            gaps = np.diff(ys)
            assert np.all(gaps >= 0.8 * lay.plant_spacing - 1e-9)


def test_instances_inside_extent_and_on_soil(small_library, small_soil):
    lay = make_layout(weed_count=8)
    scene = compose_field(lay, small_soil, small_library,
                          np.random.default_rng(11))
    for p in scene.plants:
        x, y, z = p.position
        assert -1.5 <= x <= 1.5 and -1.0 <= y <= 1.0
        assert abs(z - small_soil.displacement_at(x, y)) < 1e-3


def test_scene_determinism(small_library, small_soil):
    lay = make_layout()
    a = compose_field(lay, small_soil, small_library,
                      np.random.default_rng(7))
    b = compose_field(lay, small_soil, small_library,
                      np.random.default_rng(7))
    assert len(a.plants) == len(b.plants)
    for pa, pb in zip(a.plants, b.plants):
        assert pa.species == pb.species
        assert np.array_equal(pa.position, pb.position)
        assert pa.yaw == pb.yaw


class TestDebris:
    def test_density_zero_no_debris(self, small_library, small_soil):
        scene = compose_field(make_layout(), small_soil, small_library,
                              np.random.default_rng(0))
        scatter_debris(scene, 0.0, seed=1)
        assert scene.debris == []

    def test_deterministic(self, small_library, small_soil):
        lay = make_layout()
        a = compose_field(lay, small_soil, small_library,
                          np.random.default_rng(0))
        scatter_debris(a, 0.5, seed=9)
        b = compose_field(lay, small_soil, small_library,
                          np.random.default_rng(0))
        scatter_debris(b, 0.5, seed=9)
        assert len(a.debris) == len(b.debris)
        for da, db in zip(a.debris, b.debris):
            assert np.array_equal(da.position, db.position)
            assert da.shape_index == db.shape_index

    def test_clearance_from_crop_stems(self, small_library, small_soil):
        lay = make_layout()
        scene = compose_field(lay, small_soil, small_library,
                              np.random.default_rng(1))
        scatter_debris(scene, 0.9, seed=2)
        crop_xy = np.array([p.position[:2] for p in scene.plants
                            if p.semantic_class == "crop"])
        for d in scene.debris:
            dist = np.linalg.norm(crop_xy - d.position[:2], axis=1).min()
            assert dist > 0.01

    def test_clustering_beats_uniform(self, small_library, small_soil):
        # Morisita index on a 16x16 quadrat grid
        def morisita(points, extent):
            grid = np.zeros((16, 16), dtype=int)
            for x, y in points:
                ix = min(15, int((x / extent[0] + 0.5) * 16))
                iy = min(15, int((y / extent[1] + 0.5) * 16))
                grid[iy, ix] += 1
            n = grid.sum()
            if n < 2:
                return 0.0
            q = grid.size
            return q * np.sum(grid * (grid - 1)) / (n * (n - 1))

        lay = make_layout(weed_count=1)
        wins = 0
        for seed in range(10):
            scene = compose_field(lay, small_soil, small_library,
                                  np.random.default_rng(seed),
                                  dormancy_override=1.0)  # no crops: no culls
            scatter_debris(scene, 0.45, seed=seed)
            pts = np.array([d.position[:2] for d in scene.debris])
            if len(pts) < 10:
                continue
            rng = np.random.default_rng(seed + 999)
            uni = np.stack([rng.uniform(-1.5, 1.5, len(pts)),
                            rng.uniform(-1.0, 1.0, len(pts))], axis=1)
            if morisita(pts, lay.extent) > morisita(uni, lay.extent):
                wins += 1
        assert wins >= 8
