"""Assemble a FieldScene into a RenderBatch: soil grid, instanced plants,
debris, and the per-scene material/texture tables."""

from __future__ import annotations

import numpy as np

from ..field.compose import FieldScene
from ..field.debris import debris_texture_image, debris_texture_key
from ..geom import smooth_vertex_normals, yaw_matrix
from ..plants.materials import stem_texture_image
from .channels import CLASS_IDS
from .raster import RenderBatch


def soil_mesh_arrays(soil, cells: int = 96):
    """Displaced ground grid over the soil extent; uv spans [0, 1]^2."""
    ex, ey = soil.extent
    nx = ny = cells + 1
    xs = np.linspace(-ex / 2.0, ex / 2.0, nx)
    ys = np.linspace(-ey / 2.0, ey / 2.0, ny)
    gx, gy = np.meshgrid(xs, ys)
    gz = np.empty_like(gx)
    for i in range(ny):
        for j in range(nx):
            gz[i, j] = soil.displacement_at(gx[i, j], gy[i, j])
    positions = np.stack([gx.ravel(), gy.ravel(), gz.ravel()], axis=1)
    uvs = np.stack([(gx.ravel() / ex + 0.5), (gy.ravel() / ey + 0.5)], axis=1)

    tris = []
    for i in range(cells):
        for j in range(cells):
            a = i * nx + j
            b = a + 1
            c = a + nx + 1
            d = a + nx
            tris.append((a, b, c))
            tris.append((a, c, d))
    triangles = np.asarray(tris, dtype=np.int32)
    normals = smooth_vertex_normals(positions, triangles).astype(np.float64)
    return positions, normals, uvs, triangles


class _BatchBuilder:
    def __init__(self):
        self.positions = []
        self.normals = []
        self.uvs = []
        self.triangles = []
        self.tri_material = []
        self.tri_instance = []
        self.textures = []
        self.texture_index = {}
        self.materials = {}     # (tex_idx, tint) -> material index
        self.material_rows = []
        self.v_off = 0

    def texture(self, key: str, image_fn) -> int:
        if key not in self.texture_index:
            self.texture_index[key] = len(self.textures)
            self.textures.append(np.ascontiguousarray(image_fn(),
                                                      dtype=np.float32))
        return self.texture_index[key]

    def material(self, tex_idx: int, tint) -> int:
        row = (tex_idx, float(tint[0]), float(tint[1]), float(tint[2]))
        if row not in self.materials:
            self.materials[row] = len(self.material_rows)
            self.material_rows.append(row)
        return self.materials[row]

    def add(self, positions, normals, uvs, triangles, material: int,
            instance: int):
        self.positions.append(np.asarray(positions, dtype=np.float64))
        self.normals.append(np.asarray(normals, dtype=np.float64))
        self.uvs.append(np.asarray(uvs, dtype=np.float64))
        self.triangles.append(np.asarray(triangles, dtype=np.int64)
                              + self.v_off)
        n_tri = len(triangles)
        self.tri_material.append(np.full(n_tri, material, dtype=np.int32))
        self.tri_instance.append(np.full(n_tri, instance, dtype=np.int32))
        self.v_off += len(positions)

    def finish(self, class_of_instance) -> RenderBatch:
        if not self.positions:
            empty3 = np.zeros((0, 3))
            return RenderBatch(empty3, empty3, np.zeros((0, 2)),
                               np.zeros((0, 3), np.int32),
                               np.zeros(0, np.int32), np.zeros(0, np.int32),
                               [np.ones((2, 2, 4), np.float32)],
                               np.zeros(1, np.int32),
                               np.ones((1, 3), np.float32),
                               np.asarray(class_of_instance, np.int32))
        mat_tex = np.array([r[0] for r in self.material_rows], dtype=np.int32)
        mat_tint = np.array([r[1:] for r in self.material_rows],
                            dtype=np.float32)
        return RenderBatch(
            positions=np.concatenate(self.positions),
            normals=np.concatenate(self.normals),
            uvs=np.concatenate(self.uvs),
            triangles=np.concatenate(self.triangles).astype(np.int32),
            tri_material=np.concatenate(self.tri_material),
            tri_instance=np.concatenate(self.tri_instance),
            textures=self.textures,
            material_texture=mat_tex,
            material_tint=mat_tint,
            class_of_instance=np.asarray(class_of_instance, np.int32))


def build_render_batch(scene: FieldScene, library: dict, atlases: dict,
                       debris_shapes: list | None = None,
                       soil_cells: int = 96) -> RenderBatch:
    """Flatten a composed scene into rasterizer arrays.

    `library` maps species to assembly lists (same object used when the
    scene was composed); `atlases` maps texture keys like
    "atlas:soybean" to TextureAtlas objects.
    """
    b = _BatchBuilder()

    soil_tex = b.texture("soil", scene.soil.baked_rgba)
    soil_mat = b.material(soil_tex, (1.0, 1.0, 1.0))
    b.add(*soil_mesh_arrays(scene.soil, soil_cells), soil_mat, 0)

    max_id = max((p.instance_id for p in scene.plants), default=0)
    class_of_instance = np.zeros(max_id + 1, dtype=np.int32)

    for placed in scene.plants:
        assembly = library[placed.species][placed.library_index]
        class_of_instance[placed.instance_id] = \
            CLASS_IDS[placed.semantic_class]
        rot = yaw_matrix(placed.yaw)
        for mesh in assembly.meshes:
            key = mesh.material.texture
            if key.startswith("atlas:"):
                atlas = atlases[key]
                tex = b.texture(key, atlas.rgba)
            elif key.startswith("stem:"):
                tex = b.texture(key,
                                lambda k=key: stem_texture_image(k.split(":")[1]))
            else:
                tex = b.texture(key, lambda: np.ones((2, 2, 4), np.float32))
            mat = b.material(tex, mesh.material.tint)
            moved = mesh.transformed(rot, placed.position)
            b.add(moved.vertices, moved.normals, moved.uvs, moved.triangles,
                  mat, placed.instance_id)

    if scene.debris and debris_shapes:
        for placed in scene.debris:
            shape = debris_shapes[placed.shape_index % len(debris_shapes)]
            tex = b.texture(debris_texture_key(placed.shape_index),
                            lambda s=placed.shape_index: debris_texture_image(s))
            mat = b.material(tex, (1.0, 1.0, 1.0))
            rot = yaw_matrix(placed.yaw) * placed.scale
            moved = shape.transformed(rot, placed.position)
            # renormalize after the uniform scale folded into the rotation
            moved.normals = (moved.normals
                             / np.linalg.norm(moved.normals, axis=1,
                                              keepdims=True)).astype(np.float32)
            b.add(moved.vertices, moved.normals, moved.uvs, moved.triangles,
                  mat, 0)

    return b.finish(class_of_instance)
