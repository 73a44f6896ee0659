"""3D turtle interpretation of module strings into organ primitives.

The turtle keeps a position plus an orthonormal (heading, left, up) frame
and emits two kinds of primitive: stem paths (polylines with per-point
width, produced by runs of F) and placements (leaf/cotyledon frames with
the module's parameters). Species generators turn these into meshes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .expr import LsysError
from .program import Module, TURTLE_SYMBOLS

ORGAN_STEM = "stem"
ORGAN_BRANCH = "branch"
ORGAN_LEAF = "leaf"
ORGAN_COTYLEDON = "cotyledon"

_LABEL_BY_INDEX = {0: ORGAN_STEM, 1: ORGAN_BRANCH}


class TurtleError(LsysError):
    pass


@dataclass
class TurtleConfig:
    step: float = 0.01            # default F/f distance (m)
    angle_deg: float = 45.0       # default rotation for bare +-&^/\
    width: float = 0.002          # initial stem width (m)
    position: tuple = (0.0, 0.0, 0.0)
    skip_symbols: frozenset = frozenset()  # non-terminals left in the string


@dataclass
class StemPath:
    """Polyline traced by consecutive F moves; width recorded per point."""
    points: list = field(default_factory=list)   # [(x, y, z)]
    widths: list = field(default_factory=list)
    label: str = ORGAN_STEM
    depth: int = 0   # bracket depth at which the path started


@dataclass
class Placement:
    """Leaf or cotyledon anchor: full frame plus the module's parameters."""
    position: np.ndarray
    heading: np.ndarray
    left: np.ndarray
    up: np.ndarray
    label: str
    params: tuple = ()
    depth: int = 0


@dataclass
class TurtleState:
    position: np.ndarray
    heading: np.ndarray
    left: np.ndarray
    up: np.ndarray
    width: float
    label: str = ORGAN_STEM

    def copy(self) -> "TurtleState":
        return TurtleState(self.position.copy(), self.heading.copy(),
                           self.left.copy(), self.up.copy(),
                           self.width, self.label)


def _rotate(a: np.ndarray, b: np.ndarray, angle_rad: float):
    """Rotate vectors a, b in their own plane (right-handed about a x b)."""
    c, s = math.cos(angle_rad), math.sin(angle_rad)
    new_a = a * c + b * s
    new_b = b * c - a * s
    return new_a, new_b


def interpret(modules, config: TurtleConfig | None = None):
    """Walk a derived module string and collect organ primitives.

    Returns (stem_paths, placements). Symbols in config.skip_symbols are
    ignored (useful for non-terminals that remain after a guarded
    derivation stops); any other non-turtle symbol raises TurtleError.
    """
    cfg = config or TurtleConfig()
    state = TurtleState(
        position=np.array(cfg.position, dtype=np.float64),
        heading=np.array([0.0, 0.0, 1.0]),
        left=np.array([1.0, 0.0, 0.0]),
        up=np.array([0.0, 1.0, 0.0]),
        width=cfg.width,
    )
    stack: list[TurtleState] = []
    paths: list[StemPath] = []
    placements: list[Placement] = []
    current: StemPath | None = None

    def break_path():
        nonlocal current
        current = None

    def arg(module: Module, idx: int, default: float) -> float:
        return float(module.args[idx]) if len(module.args) > idx else default

    for module in modules:
        sym = module.symbol
        if sym == "F":
            dist = arg(module, 0, cfg.step)
            new_pos = state.position + state.heading * dist
            if current is None or current.label != state.label:
                current = StemPath(points=[tuple(state.position)],
                                   widths=[state.width],
                                   label=state.label, depth=len(stack))
                paths.append(current)
            current.points.append(tuple(new_pos))
            current.widths.append(state.width)
            state.position = new_pos
        elif sym == "f":
            state.position = state.position + state.heading * arg(module, 0, cfg.step)
            break_path()
        elif sym in "+-&^/\\":
            angle = math.radians(arg(module, 0, cfg.angle_deg))
            if sym == "-":
                angle = -angle
            if sym in "+-":
                state.heading, state.left = _rotate(state.heading, state.left, angle)
            elif sym == "&":
                state.heading, state.up = _rotate(state.heading, state.up, -angle)
            elif sym == "^":
                state.heading, state.up = _rotate(state.heading, state.up, angle)
            elif sym == "/":
                state.left, state.up = _rotate(state.left, state.up, -angle)
            else:  # '\'
                state.left, state.up = _rotate(state.left, state.up, angle)
            # heading changes bend the current path; they do not break it
        elif sym == "!":
            state.width = float(module.args[0])
        elif sym == "[":
            stack.append(state.copy())
            break_path()
        elif sym == "]":
            if not stack:
                raise TurtleError("']' with empty turtle stack")
            state = stack.pop()
            break_path()
        elif sym == "$":
            idx = int(module.args[0])
            if idx not in _LABEL_BY_INDEX:
                raise TurtleError(f"$({idx}): unknown organ label index")
            state.label = _LABEL_BY_INDEX[idx]
        elif sym in ("L", "K"):
            placements.append(Placement(
                position=state.position.copy(),
                heading=state.heading.copy(),
                left=state.left.copy(),
                up=state.up.copy(),
                label=ORGAN_LEAF if sym == "L" else ORGAN_COTYLEDON,
                params=tuple(float(a) for a in module.args),
                depth=len(stack),
            ))
        elif sym in cfg.skip_symbols:
            continue
        elif sym in TURTLE_SYMBOLS:
            raise TurtleError(f"turtle command {sym!r} not handled")
        else:
            raise TurtleError(f"unknown turtle command {sym!r}")

    if stack:
        raise TurtleError("unbalanced brackets: stack not empty at end of string")
    return paths, placements
