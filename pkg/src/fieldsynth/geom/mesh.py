"""Triangle mesh container and the handful of operations the pipeline needs.

Positions are meters in float32; normals unit length; UVs address a
texture atlas (already mapped into a cell where relevant).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np


@dataclass
class MaterialSlot:
    """Reference into the material table the renderer builds per scene."""
    texture: str = "default"        # atlas or flat-color texture key
    tint: tuple = (1.0, 1.0, 1.0)   # per-mesh rgb multiplier


@dataclass
class Mesh:
    vertices: np.ndarray            # (n, 3) float32
    triangles: np.ndarray           # (m, 3) int32
    normals: np.ndarray | None = None
    uvs: np.ndarray | None = None
    organ_label: str = "stem"
    material: MaterialSlot = field(default_factory=MaterialSlot)

    def __post_init__(self):
        self.vertices = np.ascontiguousarray(self.vertices, dtype=np.float32)
        self.triangles = np.ascontiguousarray(self.triangles, dtype=np.int32)
        if self.normals is not None:
            self.normals = np.ascontiguousarray(self.normals, dtype=np.float32)
        if self.uvs is not None:
            self.uvs = np.ascontiguousarray(self.uvs, dtype=np.float32)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)

    def copy(self) -> "Mesh":
        return Mesh(self.vertices.copy(), self.triangles.copy(),
                    None if self.normals is None else self.normals.copy(),
                    None if self.uvs is None else self.uvs.copy(),
                    self.organ_label,
                    replace(self.material))

    def transformed(self, rotation: np.ndarray | None = None,
                    translation=(0.0, 0.0, 0.0)) -> "Mesh":
        """New mesh with vertices rotated then translated; normals rotated."""
        out = self.copy()
        if rotation is not None:
            rot = np.asarray(rotation, dtype=np.float32)
            out.vertices = out.vertices @ rot.T
            if out.normals is not None:
                out.normals = (out.normals @ rot.T).astype(np.float32)
        out.vertices = out.vertices + np.asarray(translation, dtype=np.float32)
        return out

    def triangle_areas(self) -> np.ndarray:
        v = self.vertices[self.triangles]
        cross = np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0])
        return 0.5 * np.linalg.norm(cross.astype(np.float64), axis=1)

    def validate(self, min_area: float = 1e-12):
        """Raise if indices are out of range, triangles degenerate, or
        normals far from unit length."""
        if self.triangles.size and (self.triangles.min() < 0
                                    or self.triangles.max() >= len(self.vertices)):
            raise ValueError("triangle index out of range")
        areas = self.triangle_areas()
        if np.any(areas <= min_area):
            raise ValueError(f"{int(np.sum(areas <= min_area))} degenerate triangles")
        if self.normals is not None:
            norms = np.linalg.norm(self.normals.astype(np.float64), axis=1)
            if np.any(np.abs(norms - 1.0) > 1e-4):
                raise ValueError("non-unit vertex normals")

    def edge_counts(self) -> dict:
        """Map undirected edge -> number of triangles using it."""
        counts: dict = {}
        for tri in self.triangles:
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
                key = (int(a), int(b)) if a < b else (int(b), int(a))
                counts[key] = counts.get(key, 0) + 1
        return counts

    def is_watertight(self) -> bool:
        return all(c == 2 for c in self.edge_counts().values())


def smooth_vertex_normals(vertices: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    """Area-weighted average of incident face normals, unit length."""
    v = np.asarray(vertices, dtype=np.float64)
    acc = np.zeros_like(v)
    tv = v[triangles]
    face = np.cross(tv[:, 1] - tv[:, 0], tv[:, 2] - tv[:, 0])  # area-weighted
    for k in range(3):
        np.add.at(acc, triangles[:, k], face)
    lengths = np.linalg.norm(acc, axis=1, keepdims=True)
    lengths[lengths == 0] = 1.0
    return (acc / lengths).astype(np.float32)


def merge_meshes(meshes) -> Mesh:
    """Concatenate into one mesh; keeps the first mesh's label/material."""
    meshes = list(meshes)
    if not meshes:
        raise ValueError("nothing to merge")
    offsets = np.cumsum([0] + [m.vertex_count for m in meshes[:-1]])
    vertices = np.concatenate([m.vertices for m in meshes])
    triangles = np.concatenate([m.triangles + off
                                for m, off in zip(meshes, offsets)])
    normals = None
    if all(m.normals is not None for m in meshes):
        normals = np.concatenate([m.normals for m in meshes])
    uvs = None
    if all(m.uvs is not None for m in meshes):
        uvs = np.concatenate([m.uvs for m in meshes])
    return Mesh(vertices, triangles, normals, uvs,
                meshes[0].organ_label, replace(meshes[0].material))


def yaw_matrix(angle_rad: float) -> np.ndarray:
    c, s = np.cos(angle_rad), np.sin(angle_rad)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
