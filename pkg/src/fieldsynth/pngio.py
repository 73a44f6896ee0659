"""PNG read/write with byte-reproducible output.

Saves carry no ancillary chunks and use a pinned compression level, so a
regenerated dataset hashes identically file by file.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image


def save_png(path, array: np.ndarray):
    arr = np.asarray(array)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if arr.dtype == np.uint16:
        img = Image.fromarray(arr, mode="I;16")
    elif arr.dtype == np.uint8:
        img = Image.fromarray(arr)
    else:
        raise TypeError(f"expected uint8 or uint16 image, got {arr.dtype}")
    img.save(path, format="PNG", compress_level=6)


def load_png(path) -> np.ndarray:
    with Image.open(path) as img:
        if img.mode == "I;16":
            return np.asarray(img, dtype=np.uint16)
        return np.asarray(img)
