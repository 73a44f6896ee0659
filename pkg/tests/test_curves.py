import numpy as np
import pytest

from fieldsynth.lsys import FunctionCurve, curve_from_pairs


def test_control_points_reproduced_exactly():
    curve = curve_from_pairs([(0, 0.2), (3, 0.9), (7, 0.4), (10, 0.4)])
    for x, y in zip(curve.xs, curve.ys):
        assert curve(x) == pytest.approx(y, abs=0.0)


def test_two_point_curve_is_linear():
    curve = curve_from_pairs([(0, 0), (1, 1)])
    assert curve(0.5) == pytest.approx(0.5, abs=1e-12)
    assert curve(0.25) == pytest.approx(0.25, abs=1e-12)


def test_clamped_extrapolation():
    curve = curve_from_pairs([(0, 0), (1, 1)])
    assert curve(2.0) == 1.0
    assert curve(-3.0) == 0.0


def test_monotone_controls_give_monotone_values():
    # randomized non-decreasing knot tables must never overshoot
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = rng.integers(2, 8)
        xs = np.cumsum(rng.uniform(0.1, 1.0, n))
        ys = np.cumsum(rng.uniform(0.0, 1.0, n))
        curve = FunctionCurve(tuple(xs), tuple(ys))
        samples = curve(np.linspace(xs[0], xs[-1], 400))
        assert np.all(np.diff(samples) >= -1e-12)
        assert samples.min() >= ys[0] - 1e-12
        assert samples.max() <= ys[-1] + 1e-12


def test_vectorized_evaluation_matches_scalar():
    curve = curve_from_pairs([(0, 0), (1, 2), (2, 1)])
    xs = np.linspace(-0.5, 2.5, 13)
    vec = curve(xs)
    assert vec.shape == xs.shape
    for x, v in zip(xs, vec):
        assert curve(float(x)) == pytest.approx(v)


def test_rejects_bad_knots():
    with pytest.raises(ValueError):
        FunctionCurve((0.0,), (1.0,))
    with pytest.raises(ValueError):
        FunctionCurve((0.0, 0.0), (1.0, 2.0))
    with pytest.raises(ValueError):
        FunctionCurve((1.0, 0.5), (1.0, 2.0))
