"""Deterministic z-buffered software rasterizer.

Visibility works on packed 64-bit keys: the view depth of a fragment as
float32 bits in the high word, the global triangle id in the low word.
A per-pixel minimum over those keys (np.minimum.at) picks the nearest
fragment, with the triangle id breaking exact depth ties, so the result
is byte-identical regardless of chunking, tiling, or worker count. Two
passes over candidate fragments keep memory bounded: pass 1 reduces
keys, pass 2 recomputes fragments and shades only the winners.

Alpha-masked texels are discarded before the depth reduction, so leaf
silhouettes cut through every channel identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .camera import CameraSpec
from .channels import (BACKGROUND, encode_depth_mm, encode_normal_rgb,
                       encode_semantic_mask)
from .sun import SunSpec

_SKY_KEY = np.uint64(0xFFFFFFFFFFFFFFFF)
_FRAGMENT_CHUNK = 1_500_000


@dataclass
class RenderBatch:
    """Triangle soup with everything the rasterizer needs."""
    positions: np.ndarray          # (V, 3) float64 world
    normals: np.ndarray            # (V, 3) float64 world, unit
    uvs: np.ndarray                # (V, 2) float64
    triangles: np.ndarray          # (T, 3) int32
    tri_material: np.ndarray       # (T,) int32
    tri_instance: np.ndarray       # (T,) int32, 0 = unlabeled geometry
    textures: list                 # list of (H, W, 4) float32 RGBA
    material_texture: np.ndarray   # (M,) int32 texture index per material
    material_tint: np.ndarray      # (M, 3) float32
    class_of_instance: np.ndarray  # (max_id + 1,) int32, class per instance

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)


@dataclass
class RenderOutputs:
    rgb: np.ndarray        # (H, W, 3) uint8
    semantic: np.ndarray   # (H, W, 3) uint8, exact palette colors
    depth: np.ndarray      # (H, W) uint16 millimeters, far elsewhere
    normal: np.ndarray     # (H, W, 3) uint8 encoded world normals
    instance: np.ndarray   # (H, W) uint16, 0 = background
    meta: dict = field(default_factory=dict)


def _near_clip(tri_view, tri_uv, tri_normal, tri_mat, tri_inst, near):
    """Split triangles crossing z = near; returns expanded arrays.

    Fully-behind triangles are dropped; crossing ones are clipped with
    Sutherland-Hodgman and re-triangulated (a fan). Clipped triangles are
    appended after the in-front ones, in input order, so triangle ids
    stay deterministic.
    """
    z = tri_view[:, :, 2]
    keep = np.all(z >= near, axis=1)
    cross = ~keep & np.any(z >= near, axis=1)
    out = [(tri_view[keep], tri_uv[keep], tri_normal[keep],
            tri_mat[keep], tri_inst[keep])]
    if np.any(cross):
        vs, us, ns, ms, insts = [], [], [], [], []
        for idx in np.nonzero(cross)[0]:
            poly = [(tri_view[idx, k], tri_uv[idx, k], tri_normal[idx, k])
                    for k in range(3)]
            clipped = []
            for k in range(len(poly)):
                cur, nxt = poly[k], poly[(k + 1) % len(poly)]
                cur_in = cur[0][2] >= near
                nxt_in = nxt[0][2] >= near
                if cur_in:
                    clipped.append(cur)
                if cur_in != nxt_in:
                    t = (near - cur[0][2]) / (nxt[0][2] - cur[0][2])
                    clipped.append(tuple(a + t * (b - a)
                                         for a, b in zip(cur, nxt)))
            for k in range(1, len(clipped) - 1):
                tri = (clipped[0], clipped[k], clipped[k + 1])
                vs.append([p[0] for p in tri])
                us.append([p[1] for p in tri])
                ns.append([p[2] for p in tri])
                ms.append(tri_mat[idx])
                insts.append(tri_inst[idx])
        if vs:
            out.append((np.asarray(vs), np.asarray(us), np.asarray(ns),
                        np.asarray(ms), np.asarray(insts)))
    return tuple(np.concatenate(parts) for parts in zip(*out))


def _sample_texture(textures_by_index, tex_idx, u, v):
    """Nearest-neighbor RGBA fetch, one gather per referenced texture."""
    rgba = np.empty((len(u), 4), dtype=np.float32)
    for t in np.unique(tex_idx):
        tex = textures_by_index[int(t)]
        h, w = tex.shape[:2]
        sel = tex_idx == t
        xi = np.clip((u[sel] * w).astype(np.int64), 0, w - 1)
        yi = np.clip((v[sel] * h).astype(np.int64), 0, h - 1)  # v=0 is row 0
        rgba[sel] = tex[yi, xi]
    return rgba


class _FragmentPass:
    """Shared fragment generation for the reduce and resolve passes."""

    def __init__(self, batch: RenderBatch, cam: CameraSpec, y0: int, y1: int):
        self.batch = batch
        self.cam = cam
        self.y0, self.y1 = y0, y1

        tri_view = cam.to_view(batch.positions)[batch.triangles]
        tri_uv = batch.uvs[batch.triangles]
        tri_normal = batch.normals[batch.triangles]
        (self.tri_view, self.tri_uv, self.tri_normal,
         self.tri_mat, self.tri_inst) = _near_clip(
            tri_view, tri_uv, tri_normal,
            batch.tri_material, batch.tri_instance, cam.near)

        f = cam.focal_px
        z = self.tri_view[:, :, 2]
        self.tri_xy = np.empty_like(self.tri_view[:, :, :2])
        self.tri_xy[:, :, 0] = cam.width / 2.0 + f * self.tri_view[:, :, 0] / z
        self.tri_xy[:, :, 1] = cam.height / 2.0 + f * self.tri_view[:, :, 1] / z
        self.tri_z = z

        # pixel-index bounding boxes, clamped to this tile
        minx = self.tri_xy[:, :, 0].min(axis=1)
        maxx = self.tri_xy[:, :, 0].max(axis=1)
        miny = self.tri_xy[:, :, 1].min(axis=1)
        maxy = self.tri_xy[:, :, 1].max(axis=1)
        self.x0 = np.maximum(np.ceil(minx - 0.5), 0).astype(np.int64)
        self.x1 = np.minimum(np.floor(maxx - 0.5), cam.width - 1).astype(np.int64)
        self.y0i = np.maximum(np.ceil(miny - 0.5), y0).astype(np.int64)
        self.y1i = np.minimum(np.floor(maxy - 0.5), y1 - 1).astype(np.int64)
        self.bw = np.maximum(self.x1 - self.x0 + 1, 0)
        self.bh = np.maximum(self.y1i - self.y0i + 1, 0)
        self.counts = self.bw * self.bh

        # far-cull and degenerate-bbox cull happen via counts = 0
        beyond = np.all(self.tri_z > cam.far, axis=1)
        self.counts[beyond] = 0

        self.offsets = np.concatenate([[0], np.cumsum(self.counts)])
        self.total = int(self.offsets[-1])

    def chunks(self):
        """Yield (tri_ids, frag_px, frag_py, bary, z, keep_mask_namespace)."""
        n_tri = len(self.counts)
        start_tri = 0
        while start_tri < n_tri:
            end_tri = start_tri
            frag_start = self.offsets[start_tri]
            while (end_tri < n_tri
                   and self.offsets[end_tri + 1] - frag_start < _FRAGMENT_CHUNK):
                end_tri += 1
            if end_tri == start_tri:
                end_tri += 1
            yield self._build_chunk(start_tri, end_tri)
            start_tri = end_tri

    def _build_chunk(self, t0: int, t1: int):
        counts = self.counts[t0:t1]
        total = int(counts.sum())
        if total == 0:
            return None
        tri = np.repeat(np.arange(t0, t1, dtype=np.int64), counts)
        local = np.arange(total, dtype=np.int64) \
            - np.repeat(self.offsets[t0:t1] - self.offsets[t0], counts)
        bw = self.bw[tri]
        px = self.x0[tri] + local % bw
        py = self.y0i[tri] + local // bw

        # edge functions at pixel centers, orientation-normalized
        xy = self.tri_xy[tri]
        cx = px + 0.5
        cy = py + 0.5
        e = np.empty((total, 3))
        for k in range(3):
            ax, ay = xy[:, k, 0], xy[:, k, 1]
            bx, by = xy[:, (k + 1) % 3, 0], xy[:, (k + 1) % 3, 1]
            e[:, k] = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        area = e.sum(axis=1)  # e012 sums to twice the signed area
        flip = area < 0
        e[flip] *= -1.0
        area = np.abs(area)
        inside = (e >= 0.0).all(axis=1) & (area > 1e-12)
        if not np.any(inside):
            return None

        tri = tri[inside]
        px, py = px[inside], py[inside]
        e = e[inside] / area[inside][:, None]
        # barycentric weight of vertex k is the edge function opposite it
        bary = e[:, [1, 2, 0]]

        z_inv = (bary / self.tri_z[tri]).sum(axis=1)
        z = 1.0 / z_inv

        # perspective-correct uv for the alpha test
        uvw = self.tri_uv[tri] / self.tri_z[tri][:, :, None]
        uv = (bary[:, :, None] * uvw).sum(axis=1) / z_inv[:, None]

        mat = self.tri_mat[tri]
        tex_idx = self.batch.material_texture[mat]
        rgba = _sample_texture(self.batch.textures, tex_idx, uv[:, 0], uv[:, 1])
        visible = (rgba[:, 3] >= 0.5) & (z <= self.cam.far)
        if not np.any(visible):
            return None
        sel = np.nonzero(visible)[0]
        return {
            "tri": tri[sel], "px": px[sel], "py": py[sel],
            "bary": bary[sel], "z": z[sel], "z_inv": z_inv[sel],
            "rgb": rgba[sel, :3], "mat": mat[sel],
        }


def _pack_keys(z: np.ndarray, tri: np.ndarray) -> np.ndarray:
    zbits = np.maximum(z, 0.0).astype(np.float32).view(np.uint32)
    return (zbits.astype(np.uint64) << np.uint64(32)) | tri.astype(np.uint64)


def render_batch(batch: RenderBatch, cam: CameraSpec, sun: SunSpec,
                 tiles: int = 1,
                 sky_horizon=(0.74, 0.82, 0.92),
                 sky_zenith=(0.35, 0.55, 0.85)) -> RenderOutputs:
    """Rasterize a batch into aligned RGB / semantic / depth / normal /
    instance buffers.

    `tiles` splits the image into horizontal bands processed
    independently; any tiling yields byte-identical output because pixel
    ownership is exclusive and the depth reduction is tiling-invariant.
    """
    if sun.elevation <= 0.0:
        raise ValueError(f"sun elevation {sun.elevation:.2f} deg is below "
                         f"the horizon")
    h, w = cam.height, cam.width
    rgb = np.zeros((h, w, 3), dtype=np.float32)
    depth_m = np.full((h, w), np.inf, dtype=np.float64)
    instance = np.zeros((h, w), dtype=np.uint16)
    covered = np.zeros((h, w), dtype=bool)
    normal_world = np.zeros((h, w, 3), dtype=np.float64)
    normal_world[..., 2] = 1.0

    light = sun.direction_world()
    view_origin = np.asarray(cam.position, dtype=np.float64)

    bounds = np.linspace(0, h, tiles + 1).astype(int)
    for band in range(tiles):
        y0, y1 = int(bounds[band]), int(bounds[band + 1])
        if y0 == y1:
            continue
        _render_band(batch, cam, sun, light, view_origin, y0, y1,
                     rgb, depth_m, instance, normal_world, covered)

    # sky background where nothing was drawn
    sky_mask = ~covered
    if np.any(sky_mask):
        rays = cam.pixel_rays_world()
        t = np.clip(rays[..., 2], 0.0, 1.0) ** 0.5
        sky = ((1.0 - t[..., None]) * np.asarray(sky_horizon)
               + t[..., None] * np.asarray(sky_zenith))
        warm = 1.0 - 0.35 * np.exp(-sun.elevation / 12.0)
        sky = sky * np.array([1.0, warm, warm])
        rgb[sky_mask] = sky[sky_mask]

    rgb8 = np.round(np.clip(rgb, 0.0, 1.0) ** (1.0 / 2.2) * 255.0)

    return RenderOutputs(
        rgb=rgb8.astype(np.uint8),
        semantic=encode_semantic_mask(instance, batch.class_of_instance),
        depth=encode_depth_mm(depth_m, cam.far),
        normal=encode_normal_rgb(normal_world),
        instance=instance,
        meta={
            "sun_azimuth": sun.azimuth,
            "sun_elevation": sun.elevation,
            "far_mm": int(round(cam.far * 1000.0)),
        })


def _render_band(batch, cam, sun, light, view_origin, y0, y1,
                 rgb, depth_m, instance, normal_world, covered):
    fragments = _FragmentPass(batch, cam, y0, y1)
    if fragments.total == 0:
        return
    band_h = y1 - y0
    keys = np.full(band_h * cam.width, _SKY_KEY, dtype=np.uint64)

    chunks = []
    for chunk in fragments.chunks():
        if chunk is None:
            continue
        flat = (chunk["py"] - y0) * cam.width + chunk["px"]
        key = _pack_keys(chunk["z"], chunk["tri"])
        np.minimum.at(keys, flat, key)
        chunk["flat"] = flat
        chunk["key"] = key
        chunks.append(chunk)

    ambient = sun.ambient
    sun_strength = sun.irradiance * 0.9
    for chunk in chunks:
        win = chunk["key"] == keys[chunk["flat"]]
        if not np.any(win):
            continue
        tri = chunk["tri"][win]
        bary = chunk["bary"][win]
        z_inv = chunk["z_inv"][win]
        flat = chunk["flat"][win]
        base_rgb = chunk["rgb"][win]
        mat = chunk["mat"][win]

        nw = fragments.tri_normal[tri] / fragments.tri_z[tri][:, :, None]
        n = (bary[:, :, None] * nw).sum(axis=1) / z_inv[:, None]
        n /= np.linalg.norm(n, axis=1, keepdims=True)

        # world position for the view-facing flip
        vw = fragments.tri_view[tri] / fragments.tri_z[tri][:, :, None]
        view_pt = (bary[:, :, None] * vw).sum(axis=1) / z_inv[:, None]
        world_pt = view_pt @ cam.basis() + view_origin
        to_cam = view_origin - world_pt
        facing = np.sign((n * to_cam).sum(axis=1))
        facing[facing == 0] = 1.0
        n *= facing[:, None]

        diff = np.maximum((n * light).sum(axis=1), 0.0)
        tint = batch.material_tint[mat]
        shade = base_rgb * tint * (ambient + sun_strength * diff)[:, None]

        ys, xs = np.divmod(flat, cam.width)
        ys += y0
        rgb[ys, xs] = shade
        covered[ys, xs] = True
        depth_val = chunk["z"][win]
        inst = fragments.tri_inst[tri]
        labeled = inst > 0
        # label channels record vegetation only; soil and debris read as
        # background there while still occluding in the visibility pass
        depth_m[ys, xs] = np.where(labeled, depth_val, np.inf)
        instance[ys, xs] = np.where(labeled, inst, 0).astype(np.uint16)
        normal_world[ys, xs] = n
