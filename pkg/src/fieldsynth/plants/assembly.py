"""Plant-level output type shared by all species generators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SOYBEAN = "soybean"
GRASSY_WEED = "grassy_weed"
BROADLEAF_WEED = "broadleaf_weed"

CLASS_CROP = "crop"
CLASS_GRASSY = "grassy_weed"
CLASS_BROADLEAF = "broadleaf_weed"

SEMANTIC_CLASS_BY_SPECIES = {
    SOYBEAN: CLASS_CROP,
    GRASSY_WEED: CLASS_GRASSY,
    BROADLEAF_WEED: CLASS_BROADLEAF,
}


@dataclass
class PlantAssembly:
    """Organ-labeled meshes of one plant instance plus summary traits."""

    species: str
    age_days: float
    meshes: list                      # geom.Mesh, each with an organ label
    height: float                     # m, main-axis height above the base
    leaf_count: int                   # fully opened leaves
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.species not in SEMANTIC_CLASS_BY_SPECIES:
            raise ValueError(f"unknown species {self.species!r}")
        if self.height <= 0:
            raise ValueError("plant height must be positive")

    @property
    def semantic_class(self) -> str:
        return SEMANTIC_CLASS_BY_SPECIES[self.species]

    @property
    def footprint_radius(self) -> float:
        return self.meta.get("footprint_radius", 0.01)

    def digest(self) -> bytes:
        """Byte-level fingerprint of the geometry, for determinism checks."""
        import hashlib
        h = hashlib.sha256()
        h.update(f"{self.species}|{self.age_days}|{self.height}|"
                 f"{self.leaf_count}".encode())
        for mesh in self.meshes:
            h.update(mesh.organ_label.encode())
            h.update(mesh.material.texture.encode())
            h.update(np.asarray(mesh.material.tint, dtype=np.float64).tobytes())
            h.update(mesh.vertices.tobytes())
            h.update(mesh.triangles.tobytes())
            if mesh.uvs is not None:
                h.update(mesh.uvs.tobytes())
        return h.digest()
