"""Deterministic 64-bit seed derivation.

Every random decision in the pipeline draws from a numpy Generator whose
seed is derived from the run's global seed by mixing in scene indices and
subsystem labels. The mix is SplitMix64 over a stable FNV-1a label hash,
so results never depend on Python's randomized string hashing, platform,
or worker scheduling.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1


def splitmix64(state: int) -> int:
    z = (state + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def fnv1a64(text: str) -> int:
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & _MASK
    return h


def mix(seed: int, *parts) -> int:
    """Fold integers and string labels into a derived 64-bit seed."""
    state = seed & _MASK
    for part in parts:
        if isinstance(part, str):
            value = fnv1a64(part)
        else:
            value = int(part) & _MASK
        state = splitmix64(state ^ value)
    return state


def rng_for(seed: int, *parts) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(mix(seed, *parts)))
