"""Leaf texture atlases: five aligned maps plus a cell grid.

Real captured atlases can be loaded from a descriptor file; the default
atlases are synthesized procedurally (leaf silhouettes and vein patterns
drawn into each cell), with the height/normal/roughness maps derived
from the diffuse map through the same operations a captured atlas would
use.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..geom import height_and_roughness_from_diffuse, normal_from_height
from ..field.noise import fbm_grid
from ..seeding import mix, rng_for
from .assembly import BROADLEAF_WEED, GRASSY_WEED, SOYBEAN


@dataclass
class TextureAtlas:
    species: str
    diffuse: np.ndarray     # (H, W, 3) uint8
    height: np.ndarray      # (H, W) uint8
    normal: np.ndarray      # (H, W, 3) uint8
    roughness: np.ndarray   # (H, W) uint8
    alpha: np.ndarray       # (H, W) uint8
    rows: int = 1
    cols: int = 1

    def __post_init__(self):
        shape = self.diffuse.shape[:2]
        for name in ("height", "normal", "roughness", "alpha"):
            arr = getattr(self, name)
            if arr.shape[:2] != shape:
                raise ValueError(f"{name} map size differs from diffuse")
        if self.rows < 1 or self.cols < 1:
            raise ValueError("cell grid must be at least 1x1")

    @property
    def cell_count(self) -> int:
        return self.rows * self.cols

    def cell_rect(self, index: int):
        """(u0, v0, u1, v1) of a cell, row-major, within [0, 1]^2."""
        if not 0 <= index < self.cell_count:
            raise IndexError("cell index out of range")
        r, c = divmod(index, self.cols)
        du, dv = 1.0 / self.cols, 1.0 / self.rows
        return (c * du, r * dv, (c + 1) * du, (r + 1) * dv)

    def rgba(self) -> np.ndarray:
        """Diffuse + alpha as one float32 (H, W, 4) array for the renderer."""
        rgba = np.empty((*self.diffuse.shape[:2], 4), dtype=np.float32)
        rgba[..., :3] = self.diffuse.astype(np.float32) / 255.0
        rgba[..., 3] = self.alpha.astype(np.float32) / 255.0
        return rgba


def load_atlas(descriptor_path) -> TextureAtlas:
    """Read an atlas descriptor: JSON naming the five maps and the grid."""
    from ..pngio import load_png

    path = Path(descriptor_path)
    spec = json.loads(path.read_text())
    base = path.parent

    def img(key):
        return load_png(base / spec[key])

    diffuse = img("diffuse")
    alpha = img("alpha")
    if alpha.ndim == 3:
        alpha = alpha[..., 0]
    height = img("height")
    if height.ndim == 3:
        height = height[..., 0]
    roughness = img("roughness")
    if roughness.ndim == 3:
        roughness = roughness[..., 0]
    return TextureAtlas(
        species=spec["species"], diffuse=diffuse, height=height,
        normal=img("normal"), roughness=roughness, alpha=alpha,
        rows=int(spec.get("rows", 1)), cols=int(spec.get("cols", 1)))


def save_atlas(atlas: TextureAtlas, directory, stem: str = "atlas") -> Path:
    from ..pngio import save_png

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    names = {}
    for key in ("diffuse", "height", "normal", "roughness", "alpha"):
        fname = f"{stem}_{key}.png"
        save_png(directory / fname, getattr(atlas, key))
        names[key] = fname
    descriptor = {"species": atlas.species, "rows": atlas.rows,
                  "cols": atlas.cols, **names}
    out = directory / f"{stem}.json"
    out.write_text(json.dumps(descriptor, indent=2) + "\n")
    return out


# --------------------------------------------------------- default atlases

def _leaf_silhouette(species: str, res: int) -> np.ndarray:
    """Boolean mask of a canonical leaf shape filling a cell.

    Cells are addressed u (across the blade) by v (base to tip): u maps to
    image columns, v to rows.
    """
    v, u = np.mgrid[0:res, 0:res]
    u = (u + 0.5) / res * 2.0 - 1.0     # -1..1 across the blade
    v = (v + 0.5) / res                 # 0 base .. 1 tip
    if species == GRASSY_WEED:
        # long tapering blade: nearly full width, pinched tip and base
        half = 0.92 * np.minimum(1.0, 1.6 * (1.0 - v) ** 0.7) \
            * np.minimum(1.0, 0.35 + 4.0 * v)
    elif species == BROADLEAF_WEED:
        # rounded ovate blade
        half = 0.95 * np.sin(np.clip(v, 0, 1) * np.pi) ** 0.55
        half = np.maximum(half, np.where(v < 0.12, 0.18, 0.0))
    else:
        # soybean leaflet: oval with a pointed tip
        half = 0.92 * (np.sin(np.clip(v, 0, 1) * np.pi) ** 0.4) \
            * (1.0 - 0.35 * np.maximum(0.0, v - 0.75) / 0.25)
    return np.abs(u) <= half


def build_default_atlas(species: str, seed: int = 0, cell_pixels: int = 96,
                        rows: int = 2, cols: int = 2) -> TextureAtlas:
    """Deterministic procedural atlas: varied green cells with veins."""
    if species not in (SOYBEAN, GRASSY_WEED, BROADLEAF_WEED):
        raise ValueError(f"unknown species {species!r}")
    h, w = rows * cell_pixels, cols * cell_pixels
    diffuse = np.zeros((h, w, 3), dtype=np.float64)
    alpha = np.zeros((h, w), dtype=np.uint8)
    mask = _leaf_silhouette(species, cell_pixels)

    for idx in range(rows * cols):
        r, c = divmod(idx, cols)
        rng = rng_for(seed, "atlas", species, idx)
        base = np.array([0.18, 0.42, 0.10]) * rng.uniform(0.82, 1.18)
        base += np.array([0.01, 0.05, 0.0]) * rng.uniform(-1, 1)
        cell = np.ones((cell_pixels, cell_pixels, 3)) * base

        # mottling
        noise = fbm_grid((cell_pixels, cell_pixels), (3.0, 3.0), octaves=3,
                         seed=mix(seed, "mottle", species, idx))
        cell *= (1.0 + 0.18 * noise)[..., None]

        # midrib and lateral veins, slightly lighter
        v, u = np.mgrid[0:cell_pixels, 0:cell_pixels]
        uu = (u + 0.5) / cell_pixels * 2.0 - 1.0
        vv = (v + 0.5) / cell_pixels
        midrib = np.abs(uu) < 0.03
        n_veins = 5 if species != GRASSY_WEED else 0
        veins = np.zeros_like(midrib)
        for k in range(1, n_veins + 1):
            vk = k / (n_veins + 1)
            d = np.abs((vv - vk) - 0.35 * np.abs(uu))
            veins |= d < 0.012
        if species == GRASSY_WEED:  # parallel venation
            veins = (np.abs(np.mod(uu * 6.0, 1.0) - 0.5) < 0.06) & (np.abs(uu) > 0.05)
        vein_mask = (midrib | veins)
        cell[vein_mask] = cell[vein_mask] * 0.85 + 0.10

        y0, x0 = r * cell_pixels, c * cell_pixels
        diffuse[y0:y0 + cell_pixels, x0:x0 + cell_pixels] = cell
        alpha[y0:y0 + cell_pixels, x0:x0 + cell_pixels] = \
            np.where(mask, 255, 0).astype(np.uint8)

    diffuse_u8 = np.clip(diffuse * 255.0, 0, 255).astype(np.uint8)
    diffuse_u8[alpha == 0] = 0
    height_f, rough_f = height_and_roughness_from_diffuse(diffuse_u8)
    normal = normal_from_height(height_f, strength=2.0)
    return TextureAtlas(
        species=species, diffuse=diffuse_u8,
        height=np.round(height_f * 255).astype(np.uint8),
        normal=normal,
        roughness=np.round(rough_f * 255).astype(np.uint8),
        alpha=alpha, rows=rows, cols=cols)
