"""Soybean generator: Bezier main stem with organs arranged along it.

Emergence order is stem + cotyledons, then the unifoliate pair, then
trifoliate leaves one node at a time. An organ's position along the stem
sets its size and orientation; a node's age sets how far its leaf has
opened. Heights stay within (0, 0.36] m and at most six trifoliate
leaves ever open fully.
"""

from __future__ import annotations

import numpy as np

from ..geom import CrossSection, bezier_eval, bezier_tangent
from ..lsys import curve_from_pairs
from ..seeding import rng_for
from .assembly import SOYBEAN, PlantAssembly
from .organs import (MIN_RADIUS, blade_mesh_world, droop_curve,
                     normalize, petiole_mesh, plant_footprint_radius,
                     stem_mesh)
from .params import curve_from_param, load_species_params


def _rotated_out_dir(azimuth_deg: float) -> np.ndarray:
    a = np.radians(azimuth_deg)
    return np.array([np.cos(a), np.sin(a), 0.0])


def grow_soybean(age: float, seed: int, params: dict | None = None,
                 rings_per_m: float = 800.0,
                 section_points: int = 12) -> PlantAssembly:
    """Deterministic soybean assembly for one (age, seed) pair."""
    p = dict(load_species_params(SOYBEAN))
    if params:
        p.update(params)
    lo, hi = p["window_days"]
    if not lo <= age <= hi:
        raise ValueError(f"age {age} outside modeled window [{lo}, {hi}] days")

    height_curve = curve_from_param(p, "height_curve")
    uni_len = curve_from_param(p, "unifoliate_length_curve")
    tri_len = curve_from_param(p, "trifoliate_length_curve")
    incl_curve = curve_from_param(p, "inclination_curve")

    shape_rng = rng_for(seed, "soybean", "shape")
    height = float(height_curve(age)) * float(
        1.0 + p["height_jitter"] * shape_rng.uniform(-1.0, 1.0))

    # main stem: gentle lean, most curvature near the top
    lean = p["stem_lean"] * height
    lean_dir = shape_rng.uniform(0, 2 * np.pi)
    l1, l2 = shape_rng.uniform(0.2, 0.7), shape_rng.uniform(0.6, 1.0)
    cx, sx = np.cos(lean_dir), np.sin(lean_dir)
    ctrl = np.array([
        [0.0, 0.0, 0.0],
        [cx * lean * 0.2 * l1, sx * lean * 0.2 * l1, height * 0.40],
        [cx * lean * 0.6 * l2, sx * lean * 0.6 * l2, height * 0.75],
        [cx * lean, sx * lean, height],
    ])
    n_stem = max(4, int(round(height * rings_per_m)) + 1)
    ts = np.linspace(0.0, 1.0, n_stem)
    stem_pts = bezier_eval(ctrl, ts)
    widths = 2.0 * np.maximum(
        np.interp(ts, [0, 1], [p["stem_radius_base"], p["stem_radius_top"]]),
        MIN_RADIUS)
    meshes = [stem_mesh(stem_pts, widths, rings_per_m, section_points)]

    def node_frame(s: float, azimuth_deg: float):
        pos = bezier_eval(ctrl, float(s))
        h = normalize(bezier_tangent(ctrl, float(s)))
        out = _rotated_out_dir(azimuth_deg)
        out = normalize(out - np.dot(out, h) * h)
        up = np.cross(h, out)
        return pos, h, out, up

    az0 = shape_rng.uniform(0, 360)
    blade_sec = CrossSection.arc(7, sag=p["blade_sag"])
    leaf_nodes = []

    # cotyledons: an opposite pair near the base
    for k in range(2):
        rng = rng_for(seed, "soybean", "cotyledon", k)
        pos, h, out, up = node_frame(p["cotyledon_height_frac"],
                                     az0 + 180.0 * k + rng.uniform(-8, 8))
        prof = droop_curve(60.0, 85.0)
        meshes.append(blade_mesh_world(
            pos, h, out, up, p["cotyledon_length"],
            p["cotyledon_width"] / 2.0, prof, blade_sec,
            rings_per_m=rings_per_m, organ_label="cotyledon"))
        leaf_nodes.append(pos)

    def opening(node_day: float) -> float:
        return float(np.clip((age - node_day) / p["open_period_days"], 0.0, 1.0))

    # unifoliate pair
    t_uni = p["unifoliate_day"]
    n_unifoliate = 0
    if age >= t_uni:
        s_uni = min(0.35, t_uni / age)
        frac = opening(t_uni)
        for k in range(2):
            rng = rng_for(seed, "soybean", "unifoliate", k)
            pos, h, out, up = node_frame(
                s_uni, az0 + 90.0 + 180.0 * k + rng.uniform(-10, 10))
            leaf_age = age - t_uni
            length = float(uni_len(leaf_age)) * (0.35 + 0.65 * frac) \
                * (1.0 + p["size_jitter"] * rng.uniform(-1, 1))
            incl = float(incl_curve(leaf_age)) * (0.4 + 0.6 * frac)
            prof = droop_curve(incl * 0.7, incl + p["droop_extra_deg"] * frac)
            meshes.append(blade_mesh_world(
                pos, h, out, up, length, length * p["leaf_aspect"] / 2.0,
                prof, blade_sec, rings_per_m=rings_per_m))
            leaf_nodes.append(pos)
            n_unifoliate += 1

    # trifoliate nodes, newest at the top
    plast = p["trifoliate_plastochron_days"]
    n_tri = 0
    fully_open = 0
    if age >= t_uni + plast:
        n_tri = min(p["max_trifoliate_nodes"],
                    int(np.floor((age - t_uni) / plast)))
    for k in range(1, n_tri + 1):
        t_k = t_uni + k * plast
        frac = opening(t_k)
        if frac >= 1.0:
            fully_open += 1
        rng = rng_for(seed, "soybean", "trifoliate", k)
        s_k = min(0.96, t_k / age)
        azimuth = az0 + 90.0 + k * p["phyllotaxy_deg"] \
            + rng.uniform(-p["azimuth_jitter_deg"], p["azimuth_jitter_deg"])
        pos, h, out, up = node_frame(s_k, azimuth)
        leaf_age = age - t_k
        # position along the stem scales the organ: mid-stem leaves largest
        pos_scale = 1.0 - 0.25 * abs(s_k - 0.55) / 0.55
        length = float(tri_len(leaf_age)) * pos_scale * (0.3 + 0.7 * frac) \
            * (1.0 + p["size_jitter"] * rng.uniform(-1, 1))
        incl = float(incl_curve(leaf_age)) * (0.35 + 0.65 * frac)

        pet, tip, tip_dir = petiole_mesh(
            pos, h, out, length * p["petiole_frac"], p["petiole_radius"],
            incl, rings_per_m=rings_per_m)
        meshes.append(pet)
        leaf_nodes.append(pos)

        # three leaflets: center continues the petiole, two splay sideways
        center_out = normalize(tip_dir - np.dot(tip_dir, h) * h)
        for j, splay in enumerate((0.0, p["leaflet_splay_deg"],
                                   -p["leaflet_splay_deg"])):
            ca = np.radians(splay)
            rot_out = normalize(center_out * np.cos(ca)
                                + np.cross(np.array([0.0, 0.0, 1.0]),
                                           center_out) * np.sin(ca))
            up_j = np.cross(h, rot_out)
            leaflet_len = length * (1.0 if j == 0 else 0.85)
            prof = droop_curve(incl + 18.0,
                               incl + 18.0 + p["droop_extra_deg"] * frac)
            meshes.append(blade_mesh_world(
                tip, h, rot_out, up_j, leaflet_len,
                leaflet_len * p["leaf_aspect"] / 2.0, prof, blade_sec,
                rings_per_m=rings_per_m))

    return PlantAssembly(
        species=SOYBEAN, age_days=float(age), meshes=meshes,
        height=height, leaf_count=fully_open,
        meta={
            "cotyledons": 2,
            "unifoliates": n_unifoliate,
            "trifoliate_nodes": n_tri,
            "leaf_nodes": [tuple(map(float, q)) for q in leaf_nodes],
            "footprint_radius": plant_footprint_radius(meshes),
        })
