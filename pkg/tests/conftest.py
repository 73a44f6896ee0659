import numpy as np
import pytest

from fieldsynth.field import default_soil_patches, synthesize_soil
from fieldsynth.plants import (grow_broadleaf_weed, grow_grassy_weed,
                               grow_soybean)

# coarse tessellation keeps fixture plants small and fast
FAST = dict(rings_per_m=250.0, section_points=8)


@pytest.fixture(scope="session")
def small_library():
    return {
        "soybean": [grow_soybean(18.0, seed=1, **FAST),
                    grow_soybean(24.0, seed=2, **FAST)],
        "grassy_weed": [grow_grassy_weed(10.0, seed=3, **FAST)],
        "broadleaf_weed": [grow_broadleaf_weed(10.0, seed=4, **FAST)],
    }


@pytest.fixture(scope="session")
def small_soil():
    patches = default_soil_patches(seed=0, resolution=64)
    return synthesize_soil((3.0, 2.0), patches, seed=1,
                           tile_grid=4, resolution=128)
