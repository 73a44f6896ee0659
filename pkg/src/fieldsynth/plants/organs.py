"""Shared organ mesh builders used by the species generators."""

from __future__ import annotations

import numpy as np

from ..geom import CrossSection, Mesh, sweep_generalized_cylinder
from ..lsys import FunctionCurve, curve_from_pairs

MIN_RADIUS = 2e-4  # m, keeps tapered tips non-degenerate


def normalize(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def merge_contiguous_paths(paths, tol: float = 1e-9):
    """Join stem paths whose endpoints touch (same label and depth)."""
    merged = []
    for path in paths:
        if merged:
            prev = merged[-1]
            if (prev.label == path.label and prev.depth == path.depth
                    and np.allclose(prev.points[-1], path.points[0], atol=tol)):
                prev.points.extend(path.points[1:])
                prev.widths.extend(path.widths[1:])
                continue
        # copy so the original primitives stay untouched
        from ..lsys.turtle import StemPath
        merged.append(StemPath(list(path.points), list(path.widths),
                               path.label, path.depth))
    return merged


def resample_polyline(points, widths, samples_per_m: float, min_samples: int = 2):
    """Even arc-length resampling of a polyline with per-point widths."""
    pts = np.asarray(points, dtype=np.float64)
    w = np.asarray(widths, dtype=np.float64)
    seg = np.linalg.norm(pts[1:] - pts[:-1], axis=1)
    total = float(seg.sum())
    if total <= 0:
        raise ValueError("zero-length stem path")
    t = np.concatenate([[0.0], np.cumsum(seg)]) / total
    n = max(min_samples, int(round(total * samples_per_m)) + 1)
    ts = np.linspace(0.0, 1.0, n)
    out = np.stack([np.interp(ts, t, pts[:, k]) for k in range(3)], axis=1)
    return out, np.interp(ts, t, w)


def stem_mesh(points, widths, rings_per_m: float = 800.0,
              section_points: int = 12, organ_label: str = "stem",
              cap_ends: bool = True) -> Mesh:
    """Cylindrical sweep along a stem or branch polyline."""
    path, w = resample_polyline(points, widths, rings_per_m)
    radii = np.maximum(w / 2.0, MIN_RADIUS)
    return sweep_generalized_cylinder(
        path, radii, CrossSection.circle(section_points),
        cap_ends=cap_ends, organ_label=organ_label)


def droop_curve(start_deg: float, end_deg: float, name: str = "") -> FunctionCurve:
    """Inclination-from-vertical profile along a blade, eased toward the tip."""
    mid = start_deg + (end_deg - start_deg) * 0.45
    return curve_from_pairs([(0.0, start_deg), (0.5, mid), (1.0, end_deg)], name)


def blade_mesh_world(origin, stem_dir, out_dir, up_dir, length, half_width,
                     incl_profile: FunctionCurve,
                     section: CrossSection,
                     closedness=None,
                     rings_per_m: float = 800.0,
                     uv_rect=(0.0, 0.0, 1.0, 1.0),
                     organ_label: str = "leaf") -> Mesh:
    """Blade swept in world space from a node frame.

    The midrib leaves `origin` at incl_profile(0) degrees from the stem
    axis (0 = along the stem, 90 = along `out_dir`) and pitches to
    incl_profile(1) at the tip, so older leaves can droop below the
    horizontal with profile values past 90.
    """
    n = max(4, int(round(length * rings_per_m)) + 1)
    s_mid = (np.arange(n - 1) + 0.5) / (n - 1)
    theta = np.radians(np.atleast_1d(incl_profile(s_mid)))
    h = normalize(np.asarray(stem_dir, dtype=np.float64))
    o = normalize(np.asarray(out_dir, dtype=np.float64))
    dirs = np.cos(theta)[:, None] * h + np.sin(theta)[:, None] * o
    step = length / (n - 1)
    path = np.asarray(origin, dtype=np.float64) + np.concatenate(
        [np.zeros((1, 3)), np.cumsum(dirs * step, axis=0)])
    return sweep_generalized_cylinder(
        path, half_width, section, closedness=closedness,
        organ_label=organ_label, uv_rect=uv_rect,
        initial_side=np.asarray(up_dir, dtype=np.float64))


def petiole_mesh(origin, stem_dir, out_dir, length, radius,
                 incl_deg: float, sag_deg: float = 12.0,
                 rings_per_m: float = 800.0) -> tuple[Mesh, np.ndarray, np.ndarray]:
    """Thin stalk carrying a leaf; returns (mesh, tip_point, tip_direction)."""
    n = max(3, int(round(length * rings_per_m)) + 1)
    s_mid = (np.arange(n - 1) + 0.5) / (n - 1)
    theta = np.radians(incl_deg + sag_deg * s_mid)
    h = normalize(np.asarray(stem_dir, dtype=np.float64))
    o = normalize(np.asarray(out_dir, dtype=np.float64))
    dirs = np.cos(theta)[:, None] * h + np.sin(theta)[:, None] * o
    step = length / (n - 1)
    path = np.asarray(origin, dtype=np.float64) + np.concatenate(
        [np.zeros((1, 3)), np.cumsum(dirs * step, axis=0)])
    mesh = sweep_generalized_cylinder(
        path, max(radius, MIN_RADIUS), CrossSection.circle(8),
        cap_ends=True, organ_label="stem")
    return mesh, path[-1], dirs[-1]


def plant_height(meshes) -> float:
    return float(max(m.vertices[:, 2].max() for m in meshes))


def plant_footprint_radius(meshes) -> float:
    r = 0.0
    for m in meshes:
        xy = m.vertices[:, :2].astype(np.float64)
        r = max(r, float(np.linalg.norm(xy, axis=1).max()))
    return r
