"""Soil synthesis: non-repeating patch tiling plus low-frequency variation.

The ground is a texture-mapped plane. Its appearance mixes source patches
(albedo/displacement/roughness triples) on a tile grid where no two
edge-adjacent tiles share the same (patch, rotation) pair, modulated by
fbm moisture and color-temperature fields, with optional tire-track
imprints stamped into the displacement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..seeding import mix, rng_for
from .noise import fbm_grid

ROTATIONS = 4  # multiples of 90 degrees


@dataclass
class SoilPatchTexture:
    """One source patch, e.g. photogrammetry capture or procedural preset."""
    name: str
    albedo: np.ndarray        # (H, W, 3) uint8
    displacement: np.ndarray  # (H, W) float in [0, 1]
    roughness: np.ndarray     # (H, W) float in [0, 1]


@dataclass
class SoilPatch:
    """Synthesized soil for one scene."""
    extent: tuple              # (x, y) meters
    tile_grid: np.ndarray      # (rows, cols, 2) int: patch id, rotation
    albedo: np.ndarray         # (R, R, 3) uint8 composite before variation
    displacement: np.ndarray   # (R, R) float, meters above the base plane
    roughness: np.ndarray      # (R, R) float in [0, 1]
    moisture: np.ndarray       # (R, R) albedo multiplier, 1 = no effect
    color_temp: np.ndarray     # (R, R) signed warm/cool shift in [-1, 1]
    preset_names: list = field(default_factory=list)
    has_tire_track: bool = False

    def displacement_at(self, x: float, y: float) -> float:
        """Bilinear displacement sample at field coordinates (m)."""
        res_y, res_x = self.displacement.shape
        fx = (x / self.extent[0] + 0.5) * res_x - 0.5
        fy = (y / self.extent[1] + 0.5) * res_y - 0.5
        x0 = int(np.clip(np.floor(fx), 0, res_x - 2))
        y0 = int(np.clip(np.floor(fy), 0, res_y - 2))
        tx = float(np.clip(fx - x0, 0.0, 1.0))
        ty = float(np.clip(fy - y0, 0.0, 1.0))
        d = self.displacement
        return float(
            d[y0, x0] * (1 - tx) * (1 - ty) + d[y0, x0 + 1] * tx * (1 - ty)
            + d[y0 + 1, x0] * (1 - tx) * ty + d[y0 + 1, x0 + 1] * tx * ty)

    def baked_rgba(self) -> np.ndarray:
        """Albedo with moisture and color temperature applied, float32 RGBA."""
        rgb = self.albedo.astype(np.float32) / 255.0
        rgb *= self.moisture[..., None].astype(np.float32)
        warm = self.color_temp.astype(np.float32)
        rgb[..., 0] *= 1.0 + 0.10 * warm
        rgb[..., 2] *= 1.0 - 0.10 * warm
        out = np.empty((*rgb.shape[:2], 4), dtype=np.float32)
        out[..., :3] = np.clip(rgb, 0.0, 1.0)
        out[..., 3] = 1.0
        return out


def _nn_resize(img: np.ndarray, size: int) -> np.ndarray:
    idx = (np.arange(size) * img.shape[0] / size).astype(int)
    if img.ndim == 3:
        return img[idx][:, idx, :]
    return img[idx][:, idx]


def _assign_tiles(rows: int, cols: int, n_patches: int,
                  rng: np.random.Generator) -> np.ndarray:
    """Random (patch, rotation) per tile, no pair repeated across an edge."""
    combos = [(p, r) for p in range(n_patches) for r in range(ROTATIONS)]
    grid = np.zeros((rows, cols, 2), dtype=np.int64)
    for y in range(rows):
        for x in range(cols):
            taken = set()
            if x > 0:
                taken.add(tuple(grid[y, x - 1]))
            if y > 0:
                taken.add(tuple(grid[y - 1, x]))
            order = rng.permutation(len(combos))
            for k in order:
                if combos[k] not in taken:
                    grid[y, x] = combos[k]
                    break
            else:  # n_patches >= 2 gives 8+ combos, 2 neighbors; unreachable
                raise ValueError("could not satisfy tile non-repetition")
    return grid


def synthesize_soil(extent, patches, seed: int,
                    tile_grid: int = 4, resolution: int = 512,
                    moisture_amplitude: float = 0.25,
                    color_temp_amplitude: float = 0.6,
                    displacement_scale: float = 0.018,
                    tire_track_prob: float = 0.0,
                    row_direction_x: float | None = None) -> SoilPatch:
    """Build a SoilPatch from >= 2 source patches, deterministically."""
    patches = list(patches)
    if len(patches) < 2:
        raise ValueError("need at least 2 soil patches for non-repetition")
    rng = rng_for(seed, "soil", "tiles")
    grid = _assign_tiles(tile_grid, tile_grid, len(patches), rng)

    tile_px = resolution // tile_grid
    resolution = tile_px * tile_grid
    albedo = np.empty((resolution, resolution, 3), dtype=np.uint8)
    disp = np.empty((resolution, resolution), dtype=np.float64)
    rough = np.empty((resolution, resolution), dtype=np.float64)
    for y in range(tile_grid):
        for x in range(tile_grid):
            pid, rot = grid[y, x]
            src = patches[pid]
            a = np.rot90(_nn_resize(src.albedo, tile_px), rot)
            d = np.rot90(_nn_resize(src.displacement, tile_px), rot)
            r = np.rot90(_nn_resize(src.roughness, tile_px), rot)
            sl = np.s_[y * tile_px:(y + 1) * tile_px,
                       x * tile_px:(x + 1) * tile_px]
            albedo[sl] = a
            disp[sl] = d
            rough[sl] = r

    # low-frequency variation fields over field coordinates
    moisture_noise = fbm_grid((resolution, resolution), extent, octaves=3,
                              seed=mix(seed, "moisture"),
                              base_frequency=0.6)
    moisture = 1.0 - moisture_amplitude * (0.5 + 0.5 * moisture_noise)
    if moisture_amplitude == 0.0:
        moisture = np.ones_like(moisture)
    color_temp = color_temp_amplitude * fbm_grid(
        (resolution, resolution), extent, octaves=2,
        seed=mix(seed, "colortemp"), base_frequency=0.4)

    # meters: patch relief plus gentle large-scale undulation
    undulation = fbm_grid((resolution, resolution), extent, octaves=2,
                          seed=mix(seed, "undulation"), base_frequency=0.5)
    disp_m = displacement_scale * (disp - 0.5) + 0.01 * undulation

    has_track = False
    track_rng = rng_for(seed, "soil", "tiretrack")
    if track_rng.random() < tire_track_prob:
        has_track = True
        disp_m = _stamp_tire_track(disp_m, extent, track_rng, row_direction_x)

    return SoilPatch(
        extent=tuple(extent), tile_grid=grid, albedo=albedo,
        displacement=disp_m, roughness=rough,
        moisture=moisture, color_temp=color_temp,
        preset_names=[p.name for p in patches], has_tire_track=has_track)


def _stamp_tire_track(disp_m: np.ndarray, extent, rng: np.random.Generator,
                      row_direction_x: float | None) -> np.ndarray:
    """Two parallel grooves with tread ripple along a row-aligned line."""
    res_y, res_x = disp_m.shape
    ys = (np.arange(res_y) + 0.5) / res_y * extent[1] - extent[1] / 2
    xs = (np.arange(res_x) + 0.5) / res_x * extent[0] - extent[0] / 2
    gx, gy = np.meshgrid(xs, ys)
    # tracks run along the crop rows (y axis); x position is random
    cx = row_direction_x if row_direction_x is not None \
        else rng.uniform(-extent[0] / 3, extent[0] / 3)
    gauge = 0.30         # wheel-center separation, m
    groove_w = 0.09
    depth = 0.012
    ripple = 1.0 + 0.35 * np.sin(gy * 2 * np.pi / 0.07)
    out = disp_m.copy()
    for side in (-0.5, 0.5):
        d = np.abs(gx - (cx + side * gauge))
        profile = np.exp(-(d / groove_w) ** 2)
        out -= depth * profile * ripple
    return out


# ------------------------------------------------------------ default presets

_PRESETS = (
    ("dry_cracked", (0.45, 0.33, 0.22), True, 0.9),
    ("loam", (0.33, 0.24, 0.16), False, 0.6),
    ("wet_mud", (0.22, 0.16, 0.11), False, 0.35),
    ("sandy", (0.55, 0.45, 0.30), False, 0.75),
)


def default_soil_patches(seed: int = 0, resolution: int = 256):
    """Procedural patch set spanning dry cracked ground to wet mud."""
    out = []
    for idx, (name, base, cracked, rough_level) in enumerate(_PRESETS):
        mottle = fbm_grid((resolution, resolution), (1.0, 1.0), octaves=4,
                          seed=mix(seed, "soilpatch", idx), base_frequency=3.0)
        fine = fbm_grid((resolution, resolution), (1.0, 1.0), octaves=2,
                        seed=mix(seed, "soilfine", idx), base_frequency=24.0)
        rgb = np.array(base)[None, None, :] * (1.0 + 0.22 * mottle
                                               + 0.08 * fine)[..., None]
        disp = 0.5 + 0.5 * mottle
        if cracked:
            crack_field = fbm_grid((resolution, resolution), (1.0, 1.0),
                                   octaves=3, seed=mix(seed, "crack", idx),
                                   base_frequency=4.0)
            cracks = np.abs(crack_field) < 0.045
            rgb[cracks] *= 0.45
            disp = np.where(cracks, disp - 0.35, disp)
        albedo = np.clip(rgb * 255.0, 0, 255).astype(np.uint8)
        roughness = np.clip(rough_level + 0.15 * fine, 0.0, 1.0)
        out.append(SoilPatchTexture(name, albedo,
                                    np.clip(disp, 0.0, 1.0), roughness))
    return out


def load_soil_patches(directory) -> list:
    """Read a patch set: descriptor JSON naming image triples per patch."""
    from ..pngio import load_png

    directory = Path(directory)
    spec = json.loads((directory / "soil_set.json").read_text())
    patches = []
    for entry in spec["patches"]:
        albedo = load_png(directory / entry["albedo"])
        disp = load_png(directory / entry["displacement"])
        if disp.ndim == 3:
            disp = disp[..., 0]
        rough = load_png(directory / entry["roughness"])
        if rough.ndim == 3:
            rough = rough[..., 0]
        patches.append(SoilPatchTexture(
            entry["name"], albedo,
            disp.astype(np.float64) / 255.0,
            rough.astype(np.float64) / 255.0))
    return patches
