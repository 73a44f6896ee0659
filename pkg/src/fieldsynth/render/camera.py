"""Pinhole camera: world-to-view transform and perspective projection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

WORLD_UP = np.array([0.0, 0.0, 1.0])


@dataclass
class CameraSpec:
    position: tuple           # (x, y, z) m
    look_at: tuple            # (x, y, z) m
    fov_deg: float = 60.0     # vertical field of view
    width: int = 512
    height: int = 512
    near: float = 0.05
    far: float = 20.0

    def __post_init__(self):
        if not 10.0 < self.fov_deg < 120.0:
            raise ValueError("vertical FOV must lie in (10, 120) degrees")
        if self.near <= 0 or self.far <= self.near:
            raise ValueError("need 0 < near < far")

    def basis(self):
        """Rows (right, down, forward): view = (p - eye) @ basis().T."""
        eye = np.asarray(self.position, dtype=np.float64)
        target = np.asarray(self.look_at, dtype=np.float64)
        forward = target - eye
        n = np.linalg.norm(forward)
        if n < 1e-12:
            raise ValueError("camera position equals look-at point")
        forward /= n
        up_hint = WORLD_UP if abs(forward @ WORLD_UP) < 0.999 \
            else np.array([0.0, 1.0, 0.0])
        right = np.cross(forward, up_hint)
        right /= np.linalg.norm(right)
        down = np.cross(forward, right)
        return np.stack([right, down, forward])

    @property
    def focal_px(self) -> float:
        return (self.height / 2.0) / np.tan(np.radians(self.fov_deg) / 2.0)

    def to_view(self, points: np.ndarray) -> np.ndarray:
        eye = np.asarray(self.position, dtype=np.float64)
        return (np.asarray(points, dtype=np.float64) - eye) @ self.basis().T

    def project(self, view: np.ndarray) -> np.ndarray:
        """View-space points (z > 0) to pixel coordinates."""
        f = self.focal_px
        z = view[..., 2]
        px = self.width / 2.0 + f * view[..., 0] / z
        py = self.height / 2.0 + f * view[..., 1] / z
        return np.stack([px, py], axis=-1)

    def pixel_rays_world(self) -> np.ndarray:
        """(H, W, 3) unit world-space ray directions through pixel centers."""
        f = self.focal_px
        xs = (np.arange(self.width) + 0.5) - self.width / 2.0
        ys = (np.arange(self.height) + 0.5) - self.height / 2.0
        gx, gy = np.meshgrid(xs, ys)
        dirs_view = np.stack([gx / f, gy / f, np.ones_like(gx)], axis=-1)
        dirs_world = dirs_view @ self.basis()
        return dirs_world / np.linalg.norm(dirs_world, axis=-1, keepdims=True)
