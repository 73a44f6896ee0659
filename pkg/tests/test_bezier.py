import numpy as np
import pytest

from fieldsynth.geom import bezier_eval, bezier_tangent


def test_endpoint_interpolation():
    ctrl = [(0, 0, 0), (0.3, 1, 0), (1.4, 0.2, 0.5), (2, 0, 1)]
    assert np.allclose(bezier_eval(ctrl, 0.0), ctrl[0])
    assert np.allclose(bezier_eval(ctrl, 1.0), ctrl[-1])


def test_quadratic_symmetric_midpoint():
    ctrl = [(0, 0, 0), (1, 2, 0), (2, 0, 0)]
    assert np.allclose(bezier_eval(ctrl, 0.5), (1, 1, 0))


def test_cubic_matches_direct_polynomial():
    # oracle: explicit Bernstein expansion
    rng = np.random.default_rng(11)
    ctrl = rng.normal(size=(4, 3))
    for t in np.linspace(0, 1, 17):
        b = ((1 - t) ** 3 * ctrl[0] + 3 * (1 - t) ** 2 * t * ctrl[1]
             + 3 * (1 - t) * t ** 2 * ctrl[2] + t ** 3 * ctrl[3])
        assert np.allclose(bezier_eval(ctrl, float(t)), b, atol=1e-12)


def test_collinear_controls_stay_on_line():
    d = np.array([1.0, 2.0, -0.5])
    ctrl = [k * d for k in (0.0, 0.1, 0.7, 1.0)]
    for t in np.linspace(0, 1, 9):
        p = bezier_eval(ctrl, float(t))
        cross = np.cross(p, d)
        assert np.linalg.norm(cross) < 1e-12


def test_vectorized_t():
    ctrl = [(0, 0, 0), (1, 2, 0), (2, 0, 0)]
    ts = np.linspace(0, 1, 5)
    pts = bezier_eval(ctrl, ts)
    assert pts.shape == (5, 3)
    for t, p in zip(ts, pts):
        assert np.allclose(bezier_eval(ctrl, float(t)), p)


def test_t_out_of_range_rejected():
    with pytest.raises(ValueError):
        bezier_eval([(0, 0, 0), (1, 1, 1)], 1.5)
    with pytest.raises(ValueError):
        bezier_eval([(0, 0, 0)], 0.5)


def test_tangent_matches_finite_difference():
    rng = np.random.default_rng(5)
    ctrl = rng.normal(size=(4, 3))
    eps = 1e-7
    for t in (0.2, 0.5, 0.8):
        num = (bezier_eval(ctrl, t + eps) - bezier_eval(ctrl, t - eps)) / (2 * eps)
        assert np.allclose(bezier_tangent(ctrl, t), num, atol=1e-5)
