"""Grassy weed generator: distichous blades from the grammar's apex rule.

Leaf count follows the plastochron: floor((age - emergence) / plastochron)
+ 1, capped by the species parameters. Each blade is swept as a
generalized cylinder blending from a closed sheath at the base to an
open blade at the tip.
"""

from __future__ import annotations

import numpy as np

from ..geom import CrossSection
from ..lsys import TurtleConfig, derive, interpret
from ..seeding import rng_for
from .assembly import GRASSY_WEED, PlantAssembly
from .organs import (blade_mesh_world, droop_curve, merge_contiguous_paths,
                     plant_footprint_radius, plant_height, stem_mesh)
from .params import load_grammar, load_species_params


def leaf_count_for_age(age: float, emergence: float, plastochron: float,
                       cap: int) -> int:
    if age < emergence:
        raise ValueError(f"age {age} precedes emergence at {emergence} days")
    return min(cap, int(np.floor((age - emergence) / plastochron)) + 1)


def grow_grassy_weed(age: float, seed: int, params: dict | None = None,
                     rings_per_m: float = 800.0,
                     section_points: int = 12) -> PlantAssembly:
    p = dict(load_species_params(GRASSY_WEED))
    if params:
        p.update(params)
    n_leaves = leaf_count_for_age(age, p["emergence_day"],
                                  p["plastochron_days"], p["max_leaves"])

    program = load_grammar(p["grammar"]).with_constants({
        "n_leaves": n_leaves,
        "age_c": age - p["emergence_day"],
        "plastochron": p["plastochron_days"],
    })
    rng = rng_for(seed, "grassy", "derive")
    modules = derive(program, n_leaves + 1, rng)
    paths, placements = interpret(
        modules, TurtleConfig(skip_symbols=frozenset("A")))

    meshes = [stem_mesh(sp.points, sp.widths, rings_per_m, section_points)
              for sp in merge_contiguous_paths(paths)]

    blade_len = program.curves["blade_len"]
    blade_incl = program.curves["blade_incl"]
    blade_droop = program.curves["blade_droop"]
    node_scale = program.curves["node_scale"]
    section = CrossSection.arc(8, sag=p["blade_sag"])

    azimuths = []
    leaf_nodes = []
    for pl in placements:
        node = int(pl.params[0])
        leaf_age = max(p["min_leaf_age"], pl.params[1])
        jrng = rng_for(seed, "grassy", "leaf", node)
        length = float(blade_len(leaf_age)) * float(node_scale(node)) \
            * (1.0 + p["size_jitter"] * jrng.uniform(-1, 1))
        incl = float(blade_incl(leaf_age)) + jrng.uniform(-4, 4)
        droop = float(blade_droop(leaf_age))
        profile = droop_curve(incl * 0.55, incl + droop)
        meshes.append(blade_mesh_world(
            pl.position, pl.heading, pl.left, pl.up, length,
            length * p["blade_aspect"] / 2.0, profile, section,
            closedness=(p["sheath_closed_frac"], p["blade_open_frac"]),
            rings_per_m=rings_per_m))
        azimuths.append(float(np.degrees(np.arctan2(pl.left[1], pl.left[0]))))
        leaf_nodes.append(tuple(map(float, pl.position)))

    return PlantAssembly(
        species=GRASSY_WEED, age_days=float(age), meshes=meshes,
        height=plant_height(meshes), leaf_count=n_leaves,
        meta={
            "leaf_azimuths_deg": azimuths,
            "leaf_nodes": leaf_nodes,
            "footprint_radius": plant_footprint_radius(meshes),
        })
