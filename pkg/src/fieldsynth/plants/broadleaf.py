"""Broadleaf weed generator: axillary branching driven by the vigour curve.

Every lateral branch starts in the axil of a leaf, so branch origins
always coincide with leaf nodes. Internodes and branches are cylinders;
leaves are petioled open generalized cylinders.
"""

from __future__ import annotations

import numpy as np

from ..geom import CrossSection
from ..lsys import TurtleConfig, derive, interpret
from ..seeding import rng_for
from .assembly import BROADLEAF_WEED, PlantAssembly
from .grassy import leaf_count_for_age
from .organs import (blade_mesh_world, droop_curve, merge_contiguous_paths,
                     normalize, petiole_mesh, plant_footprint_radius,
                     plant_height, stem_mesh)
from .params import curve_from_param, load_grammar, load_species_params


def grow_broadleaf_weed(age: float, seed: int, params: dict | None = None,
                        rings_per_m: float = 800.0,
                        section_points: int = 12) -> PlantAssembly:
    p = dict(load_species_params(BROADLEAF_WEED))
    if params:
        p.update(params)
    n_nodes = leaf_count_for_age(age, p["emergence_day"],
                                 p["plastochron_days"], p["max_nodes"])

    program = load_grammar(p["grammar"]).with_constants({
        "n_nodes": n_nodes,
        "age_c": age - p["emergence_day"],
        "plastochron": p["plastochron_days"],
    })
    if "vigour_curve" in p:
        from ..lsys import curve_from_pairs
        program = program.with_curves(
            {"vigour": curve_from_pairs(p["vigour_curve"], "vigour")})
    rng = rng_for(seed, "broadleaf", "derive")
    modules = derive(program, n_nodes + 2, rng)
    paths, placements = interpret(
        modules, TurtleConfig(skip_symbols=frozenset("PB")))

    meshes = []
    branch_origins = []
    for sp in merge_contiguous_paths(paths):
        meshes.append(stem_mesh(sp.points, sp.widths, rings_per_m,
                                section_points, organ_label=sp.label))
        if sp.label == "branch":
            branch_origins.append(tuple(map(float, sp.points[0])))

    leaf_len = curve_from_param(p, "leaf_length_curve")
    incl_curve = curve_from_param(p, "inclination_curve")
    section = CrossSection.arc(9, sag=p["blade_sag"])

    leaf_nodes = []
    for idx, pl in enumerate(placements):
        node = int(pl.params[0])
        leaf_age = max(p["min_leaf_age"], pl.params[1])
        jrng = rng_for(seed, "broadleaf", "leaf", node, idx)
        length = float(leaf_len(leaf_age)) \
            * (1.0 + p["size_jitter"] * jrng.uniform(-1, 1))
        incl = float(incl_curve(leaf_age)) + jrng.uniform(-5, 5)

        # out direction in the node's horizontal-ish plane
        out = pl.left
        if abs(np.dot(pl.heading, np.array([0.0, 0.0, 1.0]))) < 0.3:
            # on a pitched branch the blade still reaches outward
            out = normalize(pl.heading - np.dot(
                pl.heading, np.array([0.0, 0.0, 1.0])) * np.array([0, 0, 1.0]))
        pet, tip, tip_dir = petiole_mesh(
            pl.position, pl.heading, out, length * p["petiole_frac"],
            p["petiole_radius"], incl, rings_per_m=rings_per_m)
        meshes.append(pet)
        center_out = tip_dir - np.dot(tip_dir, pl.heading) * pl.heading
        if np.linalg.norm(center_out) < 1e-9:
            center_out = out
        center_out = normalize(center_out)
        up = np.cross(pl.heading, center_out)
        profile = droop_curve(incl + 15.0, incl + 15.0 + p["droop_extra_deg"])
        meshes.append(blade_mesh_world(
            tip, pl.heading, center_out, up, length,
            length * p["leaf_aspect"] / 2.0, profile, section,
            rings_per_m=rings_per_m))
        leaf_nodes.append(tuple(map(float, pl.position)))

    return PlantAssembly(
        species=BROADLEAF_WEED, age_days=float(age), meshes=meshes,
        height=plant_height(meshes), leaf_count=len(placements),
        meta={
            "leaf_nodes": leaf_nodes,
            "branch_origins": branch_origins,
            "main_nodes": n_nodes,
            "footprint_radius": plant_footprint_radius(meshes),
        })
