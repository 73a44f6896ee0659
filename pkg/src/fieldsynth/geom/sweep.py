"""Generalized-cylinder sweeps.

A cross-section polyline is instanced along a sampled 3D path in a
parallel-transport frame, scaled by a per-sample radius, optionally
twisted and inclined along the way, and blended between a closed ring
("sheath") and the open curve ("blade") with a closedness profile over
arc length. Stems use a circular section at closedness 1 with end caps;
leaf blades use an open arc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..lsys.curves import FunctionCurve
from .mesh import Mesh, smooth_vertex_normals


@dataclass(frozen=True)
class CrossSection:
    """2D profile in unit scale; closedness 0 = open curve, 1 = ring."""

    points: np.ndarray
    closedness: float = 0.0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
            raise ValueError("cross-section needs >= 3 2D points")
        if not 0.0 <= self.closedness <= 1.0:
            raise ValueError("closedness must lie in [0, 1]")
        object.__setattr__(self, "points", pts)

    @staticmethod
    def circle(n: int = 12) -> "CrossSection":
        ang = 2.0 * np.pi * np.arange(n) / n
        return CrossSection(np.stack([np.cos(ang), np.sin(ang)], axis=1), 1.0)

    @staticmethod
    def arc(n: int = 8, sag: float = 0.25) -> "CrossSection":
        """Shallow cupped blade profile spanning x in [-1, 1]."""
        x = np.linspace(-1.0, 1.0, n)
        y = sag * (x * x - 1.0)
        return CrossSection(np.stack([x, y], axis=1), 0.0)

    @staticmethod
    def flat(n: int = 8) -> "CrossSection":
        x = np.linspace(-1.0, 1.0, n)
        return CrossSection(np.stack([x, np.zeros_like(x)], axis=1), 0.0)


def parallel_transport_frames(path: np.ndarray, initial_side=None):
    """Tangent/side/up frame per sample, side transported without torsion."""
    p = np.asarray(path, dtype=np.float64)
    seg = p[1:] - p[:-1]
    seg_len = np.linalg.norm(seg, axis=1)
    if np.any(seg_len < 1e-12):
        raise ValueError("path tangent undefined: repeated path samples")
    seg_dir = seg / seg_len[:, None]

    tangents = np.empty_like(p)
    tangents[0] = seg_dir[0]
    tangents[-1] = seg_dir[-1]
    if len(p) > 2:
        mid = seg_dir[:-1] + seg_dir[1:]
        norms = np.linalg.norm(mid, axis=1)
        norms[norms < 1e-12] = 1.0
        tangents[1:-1] = mid / norms[:, None]

    if initial_side is None:
        # pick the world axis least aligned with the first tangent
        trial = np.eye(3)[np.argmin(np.abs(tangents[0]))]
    else:
        trial = np.asarray(initial_side, dtype=np.float64)
    side0 = trial - np.dot(trial, tangents[0]) * tangents[0]
    side0 /= np.linalg.norm(side0)

    sides = np.empty_like(p)
    sides[0] = side0
    for i in range(1, len(p)):
        a, b = tangents[i - 1], tangents[i]
        axis = np.cross(a, b)
        s = np.linalg.norm(axis)
        c = float(np.dot(a, b))
        prev = sides[i - 1]
        if s < 1e-12:
            sides[i] = prev
        else:
            axis = axis / s
            # Rodrigues rotation taking a to b
            sides[i] = (prev * c + np.cross(axis, prev) * s
                        + axis * np.dot(axis, prev) * (1.0 - c))
        sides[i] -= np.dot(sides[i], b) * b
        sides[i] /= np.linalg.norm(sides[i])
    ups = np.cross(tangents, sides)
    return tangents, sides, ups


def _closedness_profile(section: CrossSection, closedness, s: np.ndarray):
    if closedness is None:
        c0 = c1 = section.closedness
    elif np.isscalar(closedness):
        c0 = c1 = float(closedness)
    else:
        c0, c1 = float(closedness[0]), float(closedness[1])
    for c in (c0, c1):
        if not 0.0 <= c <= 1.0:
            raise ValueError("closedness must lie in [0, 1]")
    return c0 + (c1 - c0) * s, (c0 == 1.0 and c1 == 1.0)


def sweep_generalized_cylinder(path, radii, section: CrossSection,
                               twist: FunctionCurve | None = None,
                               bend: FunctionCurve | None = None,
                               closedness=None,
                               cap_ends: bool = False,
                               organ_label: str = "stem",
                               uv_rect=(0.0, 0.0, 1.0, 1.0),
                               initial_side=None) -> Mesh:
    """Instance `section` along `path`, one ring per path sample.

    `twist`/`bend` are evaluated over arc length s in [0, 1]. The ring at
    s spins by s * twist(s) degrees in its own plane, so the base ring
    never rotates and a constant twist curve distributes its value
    linearly along the path; bend(s) inclines the ring about the side
    axis. `closedness` is a constant or a (start, end) pair blended
    linearly along s; None takes the section's own value. Rings weld into
    closed tubes only when closedness is 1 along the whole path, which is
    also the precondition for `cap_ends`.
    """
    p = np.asarray(path, dtype=np.float64)
    if p.ndim != 2 or p.shape[1] != 3 or len(p) < 2:
        raise ValueError("need at least 2 path samples")
    r = np.broadcast_to(np.asarray(radii, dtype=np.float64), (len(p),)).copy()
    if np.any(r <= 0):
        raise ValueError("radii must be positive")

    seg_len = np.linalg.norm(p[1:] - p[:-1], axis=1)
    total = float(seg_len.sum())
    if total <= 0:
        raise ValueError("zero-length path")
    s = np.concatenate([[0.0], np.cumsum(seg_len)]) / total

    tangents, sides, ups = parallel_transport_frames(p, initial_side)
    c_of_s, welded = _closedness_profile(section, closedness, s)

    pts = section.points
    m = len(pts)
    ang = 2.0 * np.pi * np.arange(m) / m
    ring_cfg = np.stack([np.cos(ang), np.sin(ang)], axis=1)  # closed config

    twist_deg = twist(s) if twist is not None else np.zeros_like(s)
    bend_deg = bend(s) if bend is not None else np.zeros_like(s)

    n_rings = len(p)
    vertices = np.empty((n_rings * m, 3), dtype=np.float64)
    uvs = np.empty((n_rings * m, 2), dtype=np.float64)
    u0, v0, u1, v1 = uv_rect
    u_along = np.arange(m) / (m - 1)

    for i in range(n_rings):
        c = c_of_s[i]
        local = (1.0 - c) * pts + c * ring_cfg  # (m, 2)
        th = math.radians(float(s[i]) * float(np.atleast_1d(twist_deg)[i]))
        if th != 0.0:
            ct, st = math.cos(th), math.sin(th)
            local = local @ np.array([[ct, st], [-st, ct]])
        side, up, tan = sides[i], ups[i], tangents[i]
        ph = math.radians(float(np.atleast_1d(bend_deg)[i]))
        if ph != 0.0:
            up = up * math.cos(ph) + tan * math.sin(ph)
        ring = p[i] + r[i] * (local[:, :1] * side + local[:, 1:] * up)
        vertices[i * m:(i + 1) * m] = ring
        uvs[i * m:(i + 1) * m, 0] = u0 + (u1 - u0) * u_along
        uvs[i * m:(i + 1) * m, 1] = v0 + (v1 - v0) * s[i]

    quads_per_ring = m if welded else m - 1
    tris = np.empty(((n_rings - 1) * quads_per_ring * 2, 3), dtype=np.int32)
    k = 0
    for i in range(n_rings - 1):
        base = i * m
        for j in range(quads_per_ring):
            jn = (j + 1) % m
            a, b = base + j, base + jn
            c2, d = base + m + jn, base + m + j
            tris[k] = (a, b, c2)
            tris[k + 1] = (a, c2, d)
            k += 2

    verts_list = [vertices]
    tris_list = [tris]
    uv_list = [uvs]
    if cap_ends:
        if not welded:
            raise ValueError("cap_ends requires a fully closed sweep")
        ncap = len(vertices)
        for end, ring_start in ((0, 0), (n_rings - 1, (n_rings - 1) * m)):
            center = p[end]
            verts_list.append(center[None, :])
            uv_list.append(np.array([[0.5 * (u0 + u1), v0 if end == 0 else v1]]))
            fan = np.empty((m, 3), dtype=np.int32)
            for j in range(m):
                jn = (j + 1) % m
                if end == 0:  # wind caps opposite so normals face outward
                    fan[j] = (ncap, ring_start + jn, ring_start + j)
                else:
                    fan[j] = (ncap, ring_start + j, ring_start + jn)
            tris_list.append(fan)
            ncap += 1

    all_vertices = np.concatenate(verts_list)
    all_tris = np.concatenate(tris_list)
    normals = smooth_vertex_normals(all_vertices, all_tris)
    return Mesh(all_vertices, all_tris, normals,
                np.concatenate(uv_list), organ_label)


def make_leaf_mesh(length: float, width: float,
                   midrib_bend: FunctionCurve | None = None,
                   section: CrossSection | None = None,
                   uv_cell=(0.0, 0.0, 1.0, 1.0),
                   rings_per_m: float = 800.0,
                   organ_label: str = "leaf") -> Mesh:
    """Blade as an open generalized cylinder in a canonical frame.

    Base at the origin, midrib initially along +X, width along Y. The
    bend curve gives the midrib inclination in degrees over arc length;
    the path drops toward -Z as it bends. The mesh spans the length x
    width envelope; the leaf outline itself comes from the material's
    alpha mask, not from the mesh boundary.
    """
    if length <= 0 or width <= 0:
        raise ValueError("leaf length and width must be positive")
    sec = section or CrossSection.flat(8)
    n = max(4, int(round(length * rings_per_m)) + 1)
    s_mid = (np.arange(n - 1) + 0.5) / (n - 1)
    if midrib_bend is not None:
        phi = np.radians(np.atleast_1d(midrib_bend(s_mid)))
    else:
        phi = np.zeros(n - 1)
    step = length / (n - 1)
    dirs = np.stack([np.cos(phi), np.zeros_like(phi), -np.sin(phi)], axis=1)
    path = np.concatenate([np.zeros((1, 3)), np.cumsum(dirs * step, axis=0)])
    mesh = sweep_generalized_cylinder(
        path, width / 2.0, sec, closedness=sec.closedness,
        organ_label=organ_label, uv_rect=uv_cell, initial_side=(0.0, 1.0, 0.0))
    return mesh
