"""Field composition: crop rows with dormancy gaps, weeds, and debris.

Layout values are sampled inside agronomic envelopes (row spacing
0.38-0.76 m, plant spacing 5-10 cm, 10-15% seed dormancy, 1-10 weeds)
and asserted, not just documented. Crop rows run along the y axis; rows
repeat across x. The field is centered on the origin.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..seeding import mix, rng_for
from .noise import fbm_perlin
from .soil import SoilPatch

ROW_SPACING_ENVELOPE = (0.38, 0.76)
PLANT_SPACING_ENVELOPE = (0.05, 0.10)
DORMANCY_ENVELOPE = (0.10, 0.15)
WEED_COUNT_ENVELOPE = (1, 10)

PLACEMENT_MODES = ("between_rows", "within_rows", "both")


class LayoutError(ValueError):
    pass


@dataclass(frozen=True)
class FieldLayout:
    row_spacing: float
    plant_spacing: float
    rows: int
    plants_per_row: int
    dormancy_fraction: float
    weed_count: int
    weed_placement: str
    origin: tuple          # (x, y) of the field corner, m
    extent: tuple          # (x, y) size, m


@dataclass
class PlacedPlant:
    instance_id: int
    species: str
    semantic_class: str
    library_index: int
    position: np.ndarray   # (3,), z on the soil surface
    yaw: float
    row: int = -1          # crop row index, -1 for weeds


@dataclass
class PlacedDebris:
    shape_index: int
    position: np.ndarray
    yaw: float
    scale: float


@dataclass
class FieldScene:
    soil: SoilPatch
    layout: FieldLayout
    plants: list = field(default_factory=list)
    debris: list = field(default_factory=list)
    dormant_count: int = 0

    def counts_by_class(self) -> dict:
        out = {"crop": 0, "grassy_weed": 0, "broadleaf_weed": 0}
        for plant in self.plants:
            out[plant.semantic_class] += 1
        return out


def _check_envelope(name, value, envelope, override: bool):
    lo, hi = envelope
    if not override and not lo <= value <= hi:
        raise LayoutError(
            f"{name}={value} outside the agronomic envelope [{lo}, {hi}]")


def sample_layout(extent, rng: np.random.Generator,
                  row_spacing_range=ROW_SPACING_ENVELOPE,
                  plant_spacing_range=PLANT_SPACING_ENVELOPE,
                  dormancy_range=DORMANCY_ENVELOPE,
                  weed_count_range=WEED_COUNT_ENVELOPE,
                  weed_placement: str = "both",
                  allow_range_override: bool = False) -> FieldLayout:
    """Draw one layout; every sampled value is validated on the way out."""
    if weed_placement not in PLACEMENT_MODES:
        raise LayoutError(f"weed_placement must be one of {PLACEMENT_MODES}")
    row_spacing = float(rng.uniform(*row_spacing_range))
    plant_spacing = float(rng.uniform(*plant_spacing_range))
    dormancy = float(rng.uniform(*dormancy_range))
    weed_count = int(rng.integers(weed_count_range[0],
                                  weed_count_range[1] + 1))
    _check_envelope("row_spacing", row_spacing, ROW_SPACING_ENVELOPE,
                    allow_range_override)
    _check_envelope("plant_spacing", plant_spacing, PLANT_SPACING_ENVELOPE,
                    allow_range_override)
    _check_envelope("dormancy_fraction", dormancy, DORMANCY_ENVELOPE,
                    allow_range_override)
    _check_envelope("weed_count", weed_count, WEED_COUNT_ENVELOPE,
                    allow_range_override)

    rows = int(extent[0] // row_spacing)
    plants_per_row = int(extent[1] // plant_spacing)
    if rows < 1 or plants_per_row < 1:
        raise LayoutError(
            f"field extent {extent} too small for one full row at "
            f"row_spacing={row_spacing:.2f}")
    return FieldLayout(
        row_spacing=row_spacing, plant_spacing=plant_spacing, rows=rows,
        plants_per_row=plants_per_row, dormancy_fraction=dormancy,
        weed_count=weed_count, weed_placement=weed_placement,
        origin=(-extent[0] / 2.0, -extent[1] / 2.0), extent=tuple(extent))


def _row_x(layout: FieldLayout, r: int) -> float:
    span = layout.rows * layout.row_spacing
    return -span / 2.0 + (r + 0.5) * layout.row_spacing


def _truncated_gauss(rng, sigma, bound):
    return float(np.clip(rng.normal(0.0, sigma), -bound, bound))


def compose_field(layout: FieldLayout, soil: SoilPatch, library: dict,
                  rng: np.random.Generator,
                  weed_grassy_prob: float = 0.5,
                  dormancy_override: float | None = None) -> FieldScene:
    """Place crops and weeds on the soil; deterministic per rng state.

    `library` maps species name to a non-empty list of PlantAssembly.
    Crop positions form a jittered grid; a Bernoulli dormancy mask leaves
    gaps; weeds go between and/or within rows; every instance rests on
    the soil displacement at its footprint.
    """
    for species in ("soybean",):
        if not library.get(species):
            raise ValueError(f"plant library is missing {species!r}")
    scene = FieldScene(soil=soil, layout=layout)
    dormancy = layout.dormancy_fraction if dormancy_override is None \
        else dormancy_override
    sigma = 0.10 * layout.plant_spacing
    bound = 0.30 * layout.plant_spacing
    min_gap = 0.8 * layout.plant_spacing

    next_id = 1
    dormant = 0
    half_x, half_y = layout.extent[0] / 2.0, layout.extent[1] / 2.0
    for r in range(layout.rows):
        x_line = _row_x(layout, r)
        prev_y = None
        for j in range(layout.plants_per_row):
            if rng.random() < dormancy:
                dormant += 1
                continue
            y0 = layout.origin[1] + (j + 0.5) * layout.plant_spacing
            x = x_line + _truncated_gauss(rng, sigma, bound)
            y = y0 + _truncated_gauss(rng, sigma, bound)
            if prev_y is not None and y - prev_y < min_gap:
                y = prev_y + min_gap  # keep neighbors at 0.8x spacing apart
            prev_y = y
            x = float(np.clip(x, -half_x, half_x))
            y = float(np.clip(y, -half_y, half_y))
            idx = int(rng.integers(0, len(library["soybean"])))
            scene.plants.append(PlacedPlant(
                instance_id=next_id, species="soybean",
                semantic_class="crop", library_index=idx,
                position=np.array([x, y, soil.displacement_at(x, y)]),
                yaw=float(rng.uniform(0.0, 2.0 * np.pi)), row=r))
            next_id += 1

    for _ in range(layout.weed_count):
        species = "grassy_weed" if rng.random() < weed_grassy_prob \
            else "broadleaf_weed"
        if not library.get(species):
            species = ("broadleaf_weed"
                       if library.get("broadleaf_weed") else "grassy_weed")
        mode = layout.weed_placement
        if mode == "both":
            mode = "between_rows" if rng.random() < 0.5 else "within_rows"
        if mode == "between_rows" and layout.rows < 2:
            mode = "within_rows"
        if mode == "between_rows":
            r = int(rng.integers(0, layout.rows - 1))
            gap_x = _row_x(layout, r)
            # middle third of the inter-row gap
            x = gap_x + layout.row_spacing * rng.uniform(1 / 3, 2 / 3)
            y = float(rng.uniform(-half_y, half_y))
        else:
            r = int(rng.integers(0, layout.rows))
            j = int(rng.integers(0, max(1, layout.plants_per_row - 1)))
            # on the row line, between two crop slots
            x = _row_x(layout, r) + rng.uniform(-0.02, 0.02) * layout.row_spacing
            y = layout.origin[1] + (j + 1.0) * layout.plant_spacing \
                + rng.uniform(-0.2, 0.2) * layout.plant_spacing
        x = float(np.clip(x, -half_x, half_x))
        y = float(np.clip(y, -half_y, half_y))
        idx = int(rng.integers(0, len(library[species])))
        scene.plants.append(PlacedPlant(
            instance_id=next_id, species=species,
            semantic_class=library[species][idx].semantic_class,
            library_index=idx,
            position=np.array([x, y, soil.displacement_at(x, y)]),
            yaw=float(rng.uniform(0.0, 2.0 * np.pi))))
        next_id += 1

    scene.dormant_count = dormant
    return scene


def scatter_debris(scene: FieldScene, density: float, seed: int,
                   shape_count: int = 5,
                   max_per_m2: float = 60.0,
                   wavelength_rows: float = 2.0,
                   clearance: float = 0.01) -> FieldScene:
    """Cluster debris where row-spacing-scaled fbm exceeds a density cut.

    density 0 leaves the scene untouched; density 1 accepts nearly every
    candidate. The acceptance field's base wavelength is
    `wavelength_rows` times the row spacing, which couples cluster size
    to the row structure.
    """
    if density < 0:
        raise ValueError("density must be >= 0")
    if density == 0.0:
        return scene
    layout = scene.layout
    area = layout.extent[0] * layout.extent[1]
    n_candidates = int(round(density * max_per_m2 * area))
    rng = rng_for(seed, "debris", "scatter")
    xs = rng.uniform(-layout.extent[0] / 2, layout.extent[0] / 2, n_candidates)
    ys = rng.uniform(-layout.extent[1] / 2, layout.extent[1] / 2, n_candidates)
    pts = np.stack([xs, ys], axis=1)
    freq = 1.0 / (wavelength_rows * layout.row_spacing)
    values = fbm_perlin(pts, octaves=3, seed=mix(seed, "debris_field"),
                        base_frequency=freq)
    threshold = 1.0 - 2.0 * min(density, 1.0)
    accepted = pts[values > threshold]

    crop_xy = np.array([p.position[:2] for p in scene.plants
                        if p.semantic_class == "crop"]).reshape(-1, 2)
    for x, y in accepted:
        scale = float(rng.uniform(0.5, 1.6))
        radius = 0.02 * scale
        if len(crop_xy):
            d = np.min(np.linalg.norm(crop_xy - [x, y], axis=1))
            if d < clearance + radius + 0.004:  # stem radius margin
                continue
        scene.debris.append(PlacedDebris(
            shape_index=int(rng.integers(0, shape_count)),
            position=np.array([x, y, scene.soil.displacement_at(x, y)]),
            yaw=float(rng.uniform(0, 2 * np.pi)), scale=scale))
    return scene
