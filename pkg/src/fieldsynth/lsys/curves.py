"""Graphically-editable scalar functions used throughout the plant models.

A FunctionCurve is a table of (x, y) knots interpolated with a monotone
piecewise cubic (PCHIP / Fritsch-Carlson tangents), so curves calibrated
from a handful of knots never overshoot the values the modeler entered.
Evaluation outside the knot range clamps to the end values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator


@dataclass(frozen=True)
class FunctionCurve:
    """Monotone piecewise-cubic interpolant through control points."""

    xs: tuple[float, ...]
    ys: tuple[float, ...]
    name: str = ""
    _interp: PchipInterpolator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.xs) < 2:
            raise ValueError(f"curve {self.name!r} needs at least 2 control points")
        if len(self.xs) != len(self.ys):
            raise ValueError(f"curve {self.name!r} has mismatched x/y lengths")
        xs = np.asarray(self.xs, dtype=np.float64)
        if not np.all(np.diff(xs) > 0):
            raise ValueError(f"curve {self.name!r} has non-increasing x knots")
        interp = PchipInterpolator(xs, np.asarray(self.ys, dtype=np.float64))
        object.__setattr__(self, "_interp", interp)

    def __call__(self, x):
        """Evaluate at a scalar or array, clamped to the knot range."""
        clamped = np.clip(x, self.xs[0], self.xs[-1])
        out = self._interp(clamped)
        if np.isscalar(x) or np.ndim(x) == 0:
            return float(out)
        return out

    @property
    def x_min(self) -> float:
        return self.xs[0]

    @property
    def x_max(self) -> float:
        return self.xs[-1]


def curve_from_pairs(pairs, name: str = "") -> FunctionCurve:
    xs, ys = zip(*pairs)
    return FunctionCurve(tuple(float(x) for x in xs), tuple(float(y) for y in ys), name)


def constant_curve(value: float, name: str = "") -> FunctionCurve:
    """Degenerate two-knot curve that evaluates to `value` everywhere."""
    return FunctionCurve((0.0, 1.0), (float(value), float(value)), name)
