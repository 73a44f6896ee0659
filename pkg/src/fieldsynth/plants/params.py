"""Species parameter files and shipped grammars."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

import yaml

from ..lsys import curve_from_pairs, parse_lsystem


def _read_package_text(subdir: str, name: str) -> str:
    return resources.files("fieldsynth").joinpath(subdir, name).read_text()


@lru_cache(maxsize=None)
def load_species_params(species: str) -> dict:
    data = yaml.safe_load(_read_package_text("species", f"{species}.yaml"))
    if not isinstance(data, dict):
        raise ValueError(f"species file for {species!r} is not a mapping")
    return data


@lru_cache(maxsize=None)
def load_grammar(name: str):
    return parse_lsystem(_read_package_text("grammars", name))


def curve_from_param(params: dict, key: str):
    return curve_from_pairs(params[key], name=key)
