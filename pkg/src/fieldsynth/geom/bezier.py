"""Bezier curves for main stems (2 to 4 control points)."""

from __future__ import annotations

import numpy as np


def bezier_eval(ctrl, t):
    """De Casteljau evaluation; t may be scalar or an array in [0, 1]."""
    pts = np.asarray(ctrl, dtype=np.float64)
    if not 2 <= len(pts) <= 4:
        raise ValueError("expected 2 to 4 control points")
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if np.any(t_arr < 0.0) or np.any(t_arr > 1.0):
        raise ValueError("t outside [0, 1]")
    layers = pts[None, :, :].repeat(len(t_arr), axis=0)  # (nt, n, 3)
    tt = t_arr[:, None, None]
    while layers.shape[1] > 1:
        layers = layers[:, :-1] * (1.0 - tt) + layers[:, 1:] * tt
    out = layers[:, 0]
    if np.ndim(t) == 0:
        return out[0]
    return out


def bezier_tangent(ctrl, t):
    """Derivative of the curve, via the control-point difference form."""
    pts = np.asarray(ctrl, dtype=np.float64)
    n = len(pts) - 1
    diff = n * (pts[1:] - pts[:-1])
    if len(diff) == 1:
        base = np.atleast_1d(np.asarray(t, dtype=np.float64))
        out = diff[0][None, :].repeat(len(base), axis=0)
        return out[0] if np.ndim(t) == 0 else out
    return bezier_eval(diff, t)
