"""Deterministic rasterization with aligned annotation channels."""

from .camera import CameraSpec
from .channels import (BACKGROUND, BROADLEAF, CLASS_IDS, CROP, GRASSY,
                       PALETTE, PALETTE_COLORS, decode_semantic_mask,
                       encode_depth_mm, encode_normal_rgb,
                       encode_semantic_mask)
from .raster import RenderBatch, RenderOutputs, render_batch
from .scenebuild import build_render_batch, soil_mesh_arrays
from .sun import SunSpec, sun_declination_eqtime, sun_direction

__all__ = [
    "CameraSpec",
    "BACKGROUND", "BROADLEAF", "CLASS_IDS", "CROP", "GRASSY", "PALETTE",
    "PALETTE_COLORS", "decode_semantic_mask", "encode_depth_mm",
    "encode_normal_rgb", "encode_semantic_mask",
    "RenderBatch", "RenderOutputs", "render_batch",
    "build_render_batch", "soil_mesh_arrays",
    "SunSpec", "sun_declination_eqtime", "sun_direction",
]
