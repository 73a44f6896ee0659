"""Field composition: noise, soil, crop/weed placement, debris."""

from .compose import (DORMANCY_ENVELOPE, PLANT_SPACING_ENVELOPE,
                      PLACEMENT_MODES, ROW_SPACING_ENVELOPE,
                      WEED_COUNT_ENVELOPE, FieldLayout, FieldScene,
                      LayoutError, PlacedDebris, PlacedPlant, compose_field,
                      sample_layout, scatter_debris)
from .debris import (debris_texture_image, debris_texture_key,
                     make_debris_shapes)
from .noise import fbm_grid, fbm_perlin, perlin2d
from .soil import (SoilPatch, SoilPatchTexture, default_soil_patches,
                   load_soil_patches, synthesize_soil)

__all__ = [
    "DORMANCY_ENVELOPE", "PLANT_SPACING_ENVELOPE", "PLACEMENT_MODES",
    "ROW_SPACING_ENVELOPE", "WEED_COUNT_ENVELOPE", "FieldLayout",
    "FieldScene", "LayoutError", "PlacedDebris", "PlacedPlant",
    "compose_field", "sample_layout", "scatter_debris",
    "debris_texture_image", "debris_texture_key", "make_debris_shapes",
    "fbm_grid", "fbm_perlin", "perlin2d",
    "SoilPatch", "SoilPatchTexture", "default_soil_patches",
    "load_soil_patches", "synthesize_soil",
]
