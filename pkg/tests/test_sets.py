import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import viproj as vp
from conftest import catalog_sets, projection_property_battery
from viproj.validation import DimensionMismatchError


def test_halfspace_projection_boundary_value():
    # the constrained counterexample's key arithmetic, bitwise
    hs = vp.Halfspace([1.0, 0.0], 0.0)
    out = hs.project([-0.5, -1.0])
    assert np.array_equal(out, [0.0, -1.0])


def test_halfspace_interior_point_unchanged():
    hs = vp.Halfspace([1.0, 0.0], 0.0)
    x = np.array([0.0, -1.0])
    assert np.array_equal(hs.project(x), x)


def test_whole_space_identity():
    ws = vp.WholeSpace(3)
    x = np.array([3.0, -1.0, 0.25])
    assert np.array_equal(ws.project(x), x)


def test_ball_radial_scaling():
    ball = vp.Ball([0.0, 0.0], 1.0)
    assert np.allclose(ball.project([3.0, 4.0]), [0.6, 0.8], atol=1e-15)
    inside = np.array([0.3, -0.4])
    assert np.array_equal(ball.project(inside), inside)


def test_simplex_sort_threshold_example():
    simplex = vp.Simplex(3, scale=1.0)
    out = simplex.project([0.5, 0.5, 1.0])
    assert np.allclose(out, [1 / 6, 1 / 6, 2 / 3], atol=1e-15)


def _simplex_bisection_oracle(x, scale):
    # threshold tau solves sum(max(x - tau, 0)) = scale; independent of sorting
    lo, hi = x.min() - scale, x.max()
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if np.maximum(x - mid, 0.0).sum() > scale:
            lo = mid
        else:
            hi = mid
    return np.maximum(x - 0.5 * (lo + hi), 0.0)


def test_simplex_against_bisection_oracle():
    simplex = vp.Simplex(5, scale=2.5)
    rng = np.random.default_rng(21)
    for x in rng.uniform(-3, 3, size=(200, 5)):
        assert np.allclose(simplex.project(x),
                           _simplex_bisection_oracle(x, 2.5), atol=1e-10)


@pytest.mark.parametrize("feasible_set", catalog_sets(), ids=lambda s: s.kind)
def test_projection_property_battery(feasible_set):
    projection_property_battery(feasible_set, n_points=1000, seed=42)


def test_box_with_infinite_bounds_matches_halfspace():
    box = vp.Box(lower=[0.0, -np.inf], upper=[np.inf, np.inf])
    hs = vp.Halfspace([1.0, 0.0], 0.0)
    rng = np.random.default_rng(22)
    for x in rng.uniform(-5, 5, size=(1000, 2)):
        assert np.array_equal(box.project(x), hs.project(x))


def test_transform_is_rowwise_projection():
    ball = vp.Ball([0.0, 0.0], 1.0)
    pts = np.array([[3.0, 4.0], [0.1, 0.1], [-6.0, 8.0]])
    out = ball.fit(pts).transform(pts)
    assert out.shape == pts.shape
    for row_in, row_out in zip(pts, out):
        assert np.array_equal(ball.project(row_in), row_out)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        vp.Ball([0.0, 0.0], 1.0).project([1.0, 2.0, 3.0])


def test_invalid_construction():
    with pytest.raises(ValueError):
        vp.Halfspace([0.0, 0.0], 1.0)
    with pytest.raises(ValueError):
        vp.Box(lower=[1.0], upper=[0.0])
    with pytest.raises(ValueError):
        vp.Ball([0.0], 0.0)
    with pytest.raises(ValueError):
        vp.Simplex(3, scale=-1.0)
    with pytest.raises(ValueError):
        vp.set_from_params("polytope", {})


coordinate = st.floats(min_value=-100.0, max_value=100.0,
                       allow_nan=False, allow_infinity=False)


@settings(deadline=None, max_examples=200)
@given(st.lists(coordinate, min_size=3, max_size=3),
       st.lists(coordinate, min_size=3, max_size=3))
def test_simplex_projection_properties_hypothesis(x, y):
    simplex = vp.Simplex(3, scale=1.0)
    px = simplex.project(x)
    py = simplex.project(y)
    assert np.linalg.norm(simplex.project(px) - px) <= 1e-12
    assert np.linalg.norm(px - py) <= np.linalg.norm(np.subtract(x, y)) + 1e-12
    assert px.min() >= -1e-12
    assert abs(px.sum() - 1.0) <= 1e-12


@settings(deadline=None, max_examples=200)
@given(st.lists(coordinate, min_size=2, max_size=2))
def test_ball_projection_feasible_hypothesis(x):
    ball = vp.Ball([1.0, -1.0], 2.0)
    assert ball.contains(ball.project(x), tol=1e-12)
