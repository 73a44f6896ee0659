import numpy as np
import pytest

from fieldsynth.geom import (CrossSection, make_leaf_mesh,
                             sweep_generalized_cylinder)
from fieldsynth.lsys import curve_from_pairs


def straight_path(n=10, height=0.1):
    z = np.linspace(0.0, height, n)
    return np.stack([np.zeros_like(z), np.zeros_like(z), z], axis=1)


def test_straight_sweep_is_analytic_cylinder():
    r = 0.013
    mesh = sweep_generalized_cylinder(straight_path(), r, CrossSection.circle(12))
    lateral = np.linalg.norm(mesh.vertices[:, :2].astype(np.float64), axis=1)
    assert np.max(np.abs(lateral - r)) < 1e-5
    mesh.validate()


def test_ring_topology_closed_vs_open():
    path = straight_path(5)
    closed = sweep_generalized_cylinder(path, 0.01, CrossSection.circle(12))
    assert closed.vertex_count == 5 * 12
    assert closed.triangle_count == 4 * 12 * 2
    open_strip = sweep_generalized_cylinder(path, 0.01, CrossSection.arc(12))
    assert open_strip.vertex_count == 5 * 12
    assert open_strip.triangle_count == 4 * 11 * 2  # seam not welded


def _ring_angles(ring):
    return np.arctan2(ring[:, 1].astype(np.float64),
                      ring[:, 0].astype(np.float64))


def test_constant_twist_rotates_end_ring():
    # oracle: end-ring vertex angles == start-ring angles + the twist value
    twist = curve_from_pairs([(0, 90), (1, 90)])
    mesh = sweep_generalized_cylinder(straight_path(8), 0.02,
                                      CrossSection.circle(16), twist=twist)
    verts = mesh.vertices.reshape(8, 16, 3)
    start, end = _ring_angles(verts[0]), _ring_angles(verts[-1])
    diff = np.degrees(np.arctan2(np.sin(end - start), np.cos(end - start)))
    assert np.allclose(diff, 90.0, atol=1e-4)
    # the base ring is unrotated
    plain = sweep_generalized_cylinder(straight_path(8), 0.02,
                                       CrossSection.circle(16))
    assert np.allclose(verts[0], plain.vertices.reshape(8, 16, 3)[0], atol=1e-7)


def test_closed_capped_sweep_watertight():
    rng = np.random.default_rng(21)
    for _ in range(10):
        n = int(rng.integers(3, 30))
        m = int(rng.integers(3, 16))
        height = float(rng.uniform(0.02, 0.3))
        # mildly wiggly path
        z = np.linspace(0, height, n) if n > 1 else np.array([0, height])
        path = np.stack([0.02 * np.sin(z * rng.uniform(5, 20)),
                         0.02 * np.cos(z * rng.uniform(5, 20)), z], axis=1)
        if n < 2:
            continue
        radii = rng.uniform(0.002, 0.02, len(path))
        mesh = sweep_generalized_cylinder(path, radii, CrossSection.circle(m),
                                          cap_ends=True)
        assert mesh.is_watertight()
        mesh.validate()


def test_open_sweep_not_watertight():
    mesh = sweep_generalized_cylinder(straight_path(4), 0.01,
                                      CrossSection.arc(8))
    assert not mesh.is_watertight()


def test_closedness_blend_sheath_to_blade():
    # at s=0 the ring should coincide with the circle; at s=1 with the arc
    sec = CrossSection.arc(10, sag=0.3)
    mesh = sweep_generalized_cylinder(straight_path(6), 1.0, sec,
                                      closedness=(1.0, 0.0))
    verts = mesh.vertices.reshape(6, 10, 3).astype(np.float64)
    ang = 2 * np.pi * np.arange(10) / 10
    circle = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    assert np.allclose(verts[0][:, :2], circle, atol=1e-5)
    assert np.allclose(verts[-1][:, :2], sec.points, atol=1e-5)


def test_error_paths():
    with pytest.raises(ValueError, match="path"):
        sweep_generalized_cylinder(np.zeros((1, 3)), 0.01, CrossSection.circle())
    with pytest.raises(ValueError, match="positive"):
        sweep_generalized_cylinder(straight_path(3), 0.0, CrossSection.circle())
    bad = np.array([[0, 0, 0], [0, 0, 0], [0, 0, 1.0]])
    with pytest.raises(ValueError, match="tangent"):
        sweep_generalized_cylinder(bad, 0.01, CrossSection.circle())
    with pytest.raises(ValueError, match="zero-length"):
        sweep_generalized_cylinder(np.zeros((3, 3)), 0.01, CrossSection.circle())
    with pytest.raises(ValueError, match="cap_ends"):
        sweep_generalized_cylinder(straight_path(3), 0.01,
                                   CrossSection.arc(8), cap_ends=True)


def test_normals_unit_length():
    mesh = sweep_generalized_cylinder(straight_path(12), 0.015,
                                      CrossSection.circle(10), cap_ends=True)
    lengths = np.linalg.norm(mesh.normals.astype(np.float64), axis=1)
    assert np.max(np.abs(lengths - 1.0)) < 1e-4


class TestLeafMesh:
    def test_flat_leaf_bbox(self):
        mesh = make_leaf_mesh(0.1, 0.04, section=CrossSection.flat(6))
        lo = mesh.vertices.min(axis=0)
        hi = mesh.vertices.max(axis=0)
        assert hi[0] - lo[0] == pytest.approx(0.1, abs=1e-6)
        assert hi[1] - lo[1] == pytest.approx(0.04, abs=1e-6)
        assert hi[2] - lo[2] == pytest.approx(0.0, abs=1e-6)

    def test_bend_to_90_makes_tip_perpendicular(self):
        bend = curve_from_pairs([(0, 0), (1, 90)])
        mesh = make_leaf_mesh(0.1, 0.03, midrib_bend=bend,
                              section=CrossSection.flat(7))
        rings = mesh.vertices.reshape(-1, 7, 3).astype(np.float64)
        mid = rings[:, 3, :]  # midrib line
        # finite-difference tangent at the tip vs at the base
        tip_t = mid[-1] - mid[-2]
        base_t = mid[1] - mid[0]
        cosang = (tip_t @ base_t) / (np.linalg.norm(tip_t) * np.linalg.norm(base_t))
        # bend is sampled at segment midpoints, so the last tangent sits at
        # ~89 degrees for a linear ramp; allow the stated 2 degrees
        assert abs(np.degrees(np.arccos(np.clip(cosang, -1, 1))) - 90.0) < 2.0

    def test_uv_fills_cell(self):
        cell = (0.25, 0.5, 0.5, 0.75)
        mesh = make_leaf_mesh(0.08, 0.03, uv_cell=cell)
        assert np.allclose(mesh.uvs.min(axis=0), (0.25, 0.5), atol=1e-6)
        assert np.allclose(mesh.uvs.max(axis=0), (0.5, 0.75), atol=1e-6)

    def test_rejects_non_positive_dims(self):
        with pytest.raises(ValueError):
            make_leaf_mesh(0.0, 0.01)
        with pytest.raises(ValueError):
            make_leaf_mesh(0.1, -0.01)
