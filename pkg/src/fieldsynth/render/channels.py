"""Label channel encodings: palette, depth, normals."""

from __future__ import annotations

import numpy as np

# semantic class ids
BACKGROUND = 0
CROP = 1
BROADLEAF = 2
GRASSY = 3

CLASS_IDS = {
    "background": BACKGROUND,
    "crop": CROP,
    "broadleaf_weed": BROADLEAF,
    "grassy_weed": GRASSY,
}

# red = crop, green = broadleaf weed, blue = grassy weed, black = everything else
PALETTE = {
    BACKGROUND: (0, 0, 0),
    CROP: (255, 0, 0),
    BROADLEAF: (0, 255, 0),
    GRASSY: (0, 0, 255),
}

PALETTE_COLORS = np.array([PALETTE[i] for i in range(4)], dtype=np.uint8)


def encode_semantic_mask(instance_buffer: np.ndarray,
                         class_of_instance: np.ndarray) -> np.ndarray:
    """Instance ids to palette RGB via a per-instance class lookup.

    `class_of_instance[i]` is the class id of instance i; index 0 is the
    background. Raises on ids without a class entry.
    """
    ids = np.asarray(instance_buffer)
    if ids.max(initial=0) >= len(class_of_instance):
        raise ValueError(f"instance id {int(ids.max())} has no class mapping")
    classes = np.asarray(class_of_instance, dtype=np.int64)[ids]
    if classes.min(initial=0) < 0 or classes.max(initial=0) >= len(PALETTE_COLORS):
        raise ValueError("class id outside the palette")
    return PALETTE_COLORS[classes]


def decode_semantic_mask(rgb: np.ndarray) -> np.ndarray:
    """Palette RGB back to class ids; raises on non-palette pixels."""
    rgb = np.asarray(rgb, dtype=np.uint8)
    out = np.full(rgb.shape[:2], -1, dtype=np.int64)
    for cid in range(4):
        match = np.all(rgb == PALETTE_COLORS[cid], axis=-1)
        out[match] = cid
    if np.any(out < 0):
        bad = np.argwhere(out < 0)[0]
        raise ValueError(f"non-palette pixel at (y={bad[0]}, x={bad[1]}): "
                         f"{rgb[bad[0], bad[1]].tolist()}")
    return out


def encode_depth_mm(depth_m: np.ndarray, far_m: float) -> np.ndarray:
    """View depth in meters to 16-bit millimeters, background at far.

    Geometry is clamped one millimeter inside the far plane so the set
    {depth < far} stays exactly the set of labeled pixels.
    """
    far_mm = int(round(far_m * 1000.0))
    out = np.full(depth_m.shape, far_mm, dtype=np.uint16)
    finite = np.isfinite(depth_m)
    mm = np.round(depth_m[finite] * 1000.0)
    out[finite] = np.clip(mm, 0, far_mm - 1).astype(np.uint16)
    return out


def encode_normal_rgb(normals: np.ndarray) -> np.ndarray:
    """Unit world normals to 8-bit RGB: rgb = (n + 1) / 2."""
    return np.round((np.clip(normals, -1.0, 1.0) + 1.0)
                    * 0.5 * 255.0).astype(np.uint8)
