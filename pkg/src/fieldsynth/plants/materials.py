"""Material assignment: random atlas cells and per-leaf color variation."""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from ..geom import MaterialSlot
from .assembly import PlantAssembly
from .atlas import TextureAtlas

LEAF_ORGANS = ("leaf", "cotyledon")

# flat stem colors per species (rgb in 0..1)
STEM_COLORS = {
    "soybean": (0.38, 0.46, 0.22),
    "grassy_weed": (0.33, 0.47, 0.20),
    "broadleaf_weed": (0.36, 0.42, 0.21),
}


def atlas_texture_key(species: str) -> str:
    return f"atlas:{species}"


def stem_texture_key(species: str) -> str:
    return f"stem:{species}"


def assign_leaf_textures(assembly: PlantAssembly, atlas: TextureAtlas,
                         rng: np.random.Generator,
                         brightness_range=(0.85, 1.15),
                         channel_jitter: float = 0.08) -> PlantAssembly:
    """New assembly with every leaf given a random atlas cell and tint.

    Leaf UVs (canonical [0,1]^2 from the mesh builders) are remapped into
    the chosen cell; stems and branches get the species' flat stem
    material. Color variation is a per-leaf brightness multiplier plus a
    small independent red/blue skew.
    """
    if atlas.species != assembly.species:
        raise ValueError(f"atlas is for {atlas.species!r}, assembly is "
                         f"{assembly.species!r}")
    new_meshes = []
    cells = []
    for mesh in assembly.meshes:
        out = mesh.copy()
        if mesh.organ_label in LEAF_ORGANS:
            cell = int(rng.integers(0, atlas.cell_count))
            cells.append(cell)
            u0, v0, u1, v1 = atlas.cell_rect(cell)
            uv = out.uvs.astype(np.float64)
            uv[:, 0] = u0 + (u1 - u0) * uv[:, 0]
            uv[:, 1] = v0 + (v1 - v0) * uv[:, 1]
            out.uvs = uv.astype(np.float32)
            b = rng.uniform(*brightness_range)
            dr = rng.uniform(-channel_jitter, channel_jitter)
            db = rng.uniform(-channel_jitter, channel_jitter)
            out.material = MaterialSlot(
                texture=atlas_texture_key(assembly.species),
                tint=(b * (1.0 + dr), b, b * (1.0 + db)))
        else:
            out.material = MaterialSlot(
                texture=stem_texture_key(assembly.species))
        new_meshes.append(out)
    meta = dict(assembly.meta)
    meta["atlas_cells"] = cells
    return PlantAssembly(
        species=assembly.species, age_days=assembly.age_days,
        meshes=new_meshes, height=assembly.height,
        leaf_count=assembly.leaf_count, meta=meta)


def stem_texture_image(species: str) -> np.ndarray:
    """Tiny flat RGBA texture for stems and branches."""
    rgb = STEM_COLORS[species]
    img = np.empty((2, 2, 4), dtype=np.float32)
    img[..., 0], img[..., 1], img[..., 2] = rgb
    img[..., 3] = 1.0
    return img
