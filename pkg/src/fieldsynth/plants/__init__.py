"""Species-level plant generators and material assignment."""

from .assembly import (BROADLEAF_WEED, CLASS_BROADLEAF, CLASS_CROP,
                       CLASS_GRASSY, GRASSY_WEED, SEMANTIC_CLASS_BY_SPECIES,
                       SOYBEAN, PlantAssembly)
from .atlas import TextureAtlas, build_default_atlas, load_atlas, save_atlas
from .broadleaf import grow_broadleaf_weed
from .grassy import grow_grassy_weed, leaf_count_for_age
from .materials import (assign_leaf_textures, atlas_texture_key,
                        stem_texture_image, stem_texture_key)
from .params import load_grammar, load_species_params
from .soybean import grow_soybean

GROWERS = {
    SOYBEAN: grow_soybean,
    GRASSY_WEED: grow_grassy_weed,
    BROADLEAF_WEED: grow_broadleaf_weed,
}

__all__ = [
    "BROADLEAF_WEED", "CLASS_BROADLEAF", "CLASS_CROP", "CLASS_GRASSY",
    "GRASSY_WEED", "SEMANTIC_CLASS_BY_SPECIES", "SOYBEAN", "PlantAssembly",
    "TextureAtlas", "build_default_atlas", "load_atlas", "save_atlas",
    "grow_broadleaf_weed", "grow_grassy_weed", "leaf_count_for_age",
    "assign_leaf_textures", "atlas_texture_key", "stem_texture_image",
    "stem_texture_key", "load_grammar", "load_species_params",
    "grow_soybean", "GROWERS",
]
