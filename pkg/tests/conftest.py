import numpy as np
import pytest

import viproj as vp


class CountingOperator:
    """Delegating wrapper that counts operator evaluations."""

    def __init__(self, operator):
        self._operator = operator
        self.calls = 0

    def __call__(self, u):
        self.calls += 1
        return self._operator(u)

    def __getattr__(self, name):
        return getattr(self._operator, name)


def rotation_plane_problem():
    return vp.ProblemInstance(vp.Rotation(), vp.WholeSpace(2),
                              known_solutions=[[0.0, 0.0]])


def rotation_halfspace_problem():
    return vp.ProblemInstance(vp.Rotation(), vp.Halfspace([1.0, 0.0], 0.0),
                              known_solutions=[[0.0, 0.0]])


def sipr_plane_problem(eta):
    return vp.ProblemInstance(vp.ScaledIdentityPlusRotation(eta), vp.WholeSpace(2),
                              known_solutions=[[0.0, 0.0]])


def catalog_sets(dimension=3):
    """One instance of every feasible-set kind (default dimension 3)."""
    return [
        vp.WholeSpace(dimension),
        vp.Halfspace(np.arange(1.0, dimension + 1.0), 0.5),
        vp.Box(lower=np.full(dimension, -1.0), upper=np.full(dimension, 2.0)),
        vp.Ball(center=np.full(dimension, 0.5), radius=1.5),
        vp.Simplex(dimension, scale=1.0),
    ]


def projection_property_battery(feasible_set, n_points=1000, seed=42):
    """Idempotence, nonexpansiveness, variational characterization, feasibility.

    Returns nothing; asserts each property at the stated tolerance over
    seeded uniform points in [-5, 5]^n.
    """
    rng = np.random.default_rng(seed)
    n = feasible_set.dimension
    xs = rng.uniform(-5.0, 5.0, size=(n_points, n))
    ys = rng.uniform(-5.0, 5.0, size=(n_points, n))
    for x, y in zip(xs, ys):
        px = feasible_set.project(x)
        py = feasible_set.project(y)
        # idempotence
        assert np.linalg.norm(feasible_set.project(px) - px) <= 1e-12
        # nonexpansiveness
        assert (np.linalg.norm(px - py)
                <= np.linalg.norm(x - y) + 1e-12)
        # variational characterization against a feasible z
        z = py
        assert float(np.dot(x - px, z - px)) <= 1e-9
        # membership
        assert feasible_set.contains(px, tol=1e-12)
        if feasible_set.kind == "simplex":
            assert px.min() >= -1e-12
            assert abs(px.sum() - feasible_set.scale) <= 1e-12


@pytest.fixture
def rotation_plane():
    return rotation_plane_problem()


@pytest.fixture
def rotation_halfspace():
    return rotation_halfspace_problem()
