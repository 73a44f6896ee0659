"""Debris shape library: small flattened hulls with soil-toned materials."""

from __future__ import annotations

import numpy as np
from scipy.spatial import ConvexHull

from ..geom import MaterialSlot, Mesh, smooth_vertex_normals
from ..seeding import rng_for

DEBRIS_TONES = (
    (0.32, 0.24, 0.14),
    (0.40, 0.32, 0.18),
    (0.26, 0.20, 0.12),
    (0.47, 0.40, 0.26),
    (0.36, 0.30, 0.20),
)


def debris_texture_key(shape_id: int) -> str:
    return f"debris:{shape_id % len(DEBRIS_TONES)}"


def debris_texture_image(shape_id: int) -> np.ndarray:
    rgb = DEBRIS_TONES[shape_id % len(DEBRIS_TONES)]
    img = np.empty((2, 2, 4), dtype=np.float32)
    img[..., 0], img[..., 1], img[..., 2] = rgb
    img[..., 3] = 1.0
    return img


def make_debris_shapes(seed: int = 0, count: int = 5,
                       base_size: float = 0.02) -> list:
    """Deterministic library of flattened convex hulls, unit yaw, origin base."""
    if count < 4:
        count = 4
    shapes = []
    for k in range(count):
        rng = rng_for(seed, "debris_shape", k)
        n = int(rng.integers(9, 16))
        ang = rng.uniform(0, 2 * np.pi, n)
        rad = rng.uniform(0.35, 1.0, n) * base_size
        pts = np.stack([rad * np.cos(ang), rad * np.sin(ang),
                        rng.uniform(0.0, 0.3 * base_size, n)], axis=1)
        # guarantee full 3D extent for the hull
        pts[0, 2] = 0.0
        pts[1, 2] = 0.35 * base_size
        hull = ConvexHull(pts)
        tris = []
        centroid = pts.mean(axis=0)
        for simplex, eq in zip(hull.simplices, hull.equations):
            a, b, c = simplex
            # orient faces outward using the hull plane normal
            normal = eq[:3]
            v = pts[[a, b, c]]
            face_n = np.cross(v[1] - v[0], v[2] - v[0])
            if np.dot(face_n, normal) < 0:
                a, c = c, a
            tris.append((a, b, c))
        tris = np.asarray(tris, dtype=np.int32)
        # drop interior points the hull does not reference
        used = np.unique(tris)
        remap = np.full(len(pts), -1, dtype=np.int32)
        remap[used] = np.arange(len(used), dtype=np.int32)
        pts = pts[used]
        tris = remap[tris]
        verts = pts - [0.0, 0.0, pts[:, 2].min()]  # base sits on the ground
        mesh = Mesh(verts, tris,
                    smooth_vertex_normals(verts, tris),
                    np.zeros((len(verts), 2), dtype=np.float32),
                    organ_label="debris",
                    material=MaterialSlot(texture=debris_texture_key(k)))
        shapes.append(mesh)
    return shapes
