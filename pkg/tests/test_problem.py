import numpy as np
import pytest

import viproj as vp
from conftest import (rotation_halfspace_problem, rotation_plane_problem,
                      sipr_plane_problem)


def test_natural_residual_at_origin(rotation_plane):
    assert vp.natural_residual(rotation_plane, [0.0, 0.0], 0.5) == 0.0


def test_natural_residual_unconstrained_value(rotation_plane):
    # r = lam * ||F(u)|| when no constraint binds
    assert vp.natural_residual(rotation_plane, [0.0, -1.0], 0.5) == pytest.approx(0.5, abs=1e-15)


def test_natural_residual_halfspace_boundary_point_is_zero(rotation_halfspace):
    # (0, -1) satisfies the fixed-point characterization on {x1 >= 0}: the
    # stepped point projects straight back, so the residual is exactly 0
    assert vp.natural_residual(rotation_halfspace, [0.0, -1.0], 0.5) == 0.0


@pytest.mark.parametrize("stepsize", [0.1, 0.5, 1.0])
def test_residual_vanishes_at_known_solutions(stepsize):
    problems = [
        rotation_plane_problem(),
        rotation_halfspace_problem(),
        sipr_plane_problem(0.5),
        vp.ProblemInstance(vp.Affine([[2.0, 1.0], [0.0, 1.0]], offset=[-3.0, -1.0]),
                           vp.WholeSpace(2), known_solutions=[[1.0, 1.0]]),
    ]
    for problem in problems:
        for u_star in problem.known_solutions:
            assert vp.natural_residual(problem, u_star, stepsize) <= 1e-12


def test_natural_residual_continuity(rotation_halfspace):
    lam = 0.5
    bound = 2.0 + lam * rotation_halfspace.lipschitz
    rng = np.random.default_rng(31)
    for _ in range(200):
        u = rng.uniform(-5, 5, 2)
        delta = rng.normal(size=2)
        delta *= 1e-6 / np.linalg.norm(delta)
        r0 = vp.natural_residual(rotation_halfspace, u, lam)
        r1 = vp.natural_residual(rotation_halfspace, u + delta, lam)
        assert abs(r1 - r0) <= bound * 1e-6 + 1e-15


def test_distance_to_solution(rotation_plane):
    assert vp.distance_to_solution(rotation_plane, [0.0, 0.0]) == 0.0
    assert vp.distance_to_solution(rotation_plane, [0.0, -1.0]) == 1.0
    assert vp.distance_to_solution(rotation_plane, [5.0, 5.0]) == pytest.approx(
        7.0710678118654755, abs=1e-15)


def test_distance_requires_reference():
    problem = vp.ProblemInstance(vp.Rotation(), vp.WholeSpace(2))
    with pytest.raises(ValueError, match="no reference solution"):
        vp.distance_to_solution(problem, [1.0, 0.0])


def test_distance_uses_nearest_solution():
    problem = vp.ProblemInstance(vp.Rotation(), vp.WholeSpace(2),
                                 known_solutions=[[0.0, 0.0], [10.0, 0.0]])
    assert vp.distance_to_solution(problem, [9.0, 0.0]) == 1.0


def test_is_solution(rotation_halfspace):
    assert vp.is_solution(rotation_halfspace, [0.0, 0.0])
    assert vp.is_solution(rotation_halfspace, [0.0, -1.0])  # the boundary fixed point
    assert not vp.is_solution(rotation_halfspace, [1.0, 0.0])


def test_quasar_monotone_rotation_passes(rotation_plane):
    rng = np.random.default_rng(32)
    report = vp.check_quasar_monotone(rotation_plane, rng.uniform(-10, 10, (500, 2)))
    assert report.assumption == "quasar_monotone"
    assert report.passed
    assert report.worst_violation == 0.0
    assert report.witness is None


def test_quasar_monotone_negation_fails():
    problem = vp.ProblemInstance(vp.Negation(2), vp.WholeSpace(2),
                                 known_solutions=[[0.0, 0.0]])
    report = vp.check_quasar_monotone(problem, [[1.0, 0.0]], tol=1e-9)
    assert not report.passed
    assert report.worst_violation == pytest.approx(1.0, abs=1e-15)
    assert np.array_equal(report.witness[0], [1.0, 0.0])
    assert np.array_equal(report.witness[1], [0.0, 0.0])


def test_quasar_monotone_identity_operator():
    problem = vp.ProblemInstance(vp.Affine(np.eye(2)), vp.WholeSpace(2),
                                 known_solutions=[[0.0, 0.0]])
    sample = np.array([3.0, 4.0])
    assert float(np.dot(problem.operator(sample), sample)) == 25.0
    report = vp.check_quasar_monotone(problem, [sample])
    assert report.passed and report.worst_violation == 0.0


def test_monotone_rotation_exact_zero(rotation_plane):
    rng = np.random.default_rng(33)
    pairs = list(zip(rng.uniform(-10, 10, (1000, 2)), rng.uniform(-10, 10, (1000, 2))))
    report = vp.check_monotone(rotation_plane, pairs, tol=0.0)
    assert report.passed
    assert report.worst_violation == 0.0


def test_monotone_negation_fails():
    problem = vp.ProblemInstance(vp.Negation(2), vp.WholeSpace(2),
                                 known_solutions=[[0.0, 0.0]])
    report = vp.check_monotone(problem, [([1.0, 0.0], [0.0, 0.0])])
    assert not report.passed
    assert report.worst_violation == pytest.approx(1.0, abs=1e-15)
    assert report.witness is not None


def test_monotone_sipr_value():
    problem = sipr_plane_problem(2.0)
    u, v = np.array([1.0, 1.0]), np.array([0.0, 0.0])
    assert float(np.dot(problem.operator(u) - problem.operator(v), u - v)) == 4.0
    report = vp.check_monotone(problem, [(u, v)])
    assert report.passed and report.worst_violation == 0.0


def test_estimate_lipschitz_rotation_is_one(rotation_plane):
    rng = np.random.default_rng(34)
    pairs = list(zip(rng.uniform(-10, 10, (100, 2)), rng.uniform(-10, 10, (100, 2))))
    assert vp.estimate_lipschitz(rotation_plane, pairs) == 1.0


def test_estimate_lipschitz_scaling():
    problem = vp.ProblemInstance(vp.Affine(3.0 * np.eye(2)), vp.WholeSpace(2))
    assert vp.estimate_lipschitz(problem, [([1.0, 0.0], [0.0, 0.0])]) == pytest.approx(
        3.0, abs=1e-12)


def test_estimate_lipschitz_sipr_pair():
    problem = sipr_plane_problem(0.5)
    estimate = vp.estimate_lipschitz(problem, [([1.0, 0.0], [0.0, 0.0])])
    assert estimate == pytest.approx(1.118033988749895, abs=1e-15)


def test_estimate_lipschitz_skips_coincident_pairs(rotation_plane):
    pairs = [([1.0, 1.0], [1.0, 1.0]), ([1.0, 0.0], [0.0, 0.0])]
    assert vp.estimate_lipschitz(rotation_plane, pairs) == 1.0
    with pytest.raises(ValueError, match="coincident"):
        vp.estimate_lipschitz(rotation_plane, [([1.0, 1.0], [1.0, 1.0])])


def test_problem_validation():
    with pytest.raises(vp.DimensionMismatchError):
        vp.ProblemInstance(vp.Rotation(), vp.WholeSpace(3))
    with pytest.raises(ValueError, match="lipschitz"):
        vp.ProblemInstance(vp.Rotation(), vp.WholeSpace(2), lipschitz=-1.0)
    with pytest.raises(ValueError, match="not feasible"):
        vp.ProblemInstance(vp.Rotation(), vp.Halfspace([1.0, 0.0], 0.0),
                           known_solutions=[[-1.0, 0.0]])


def test_assumption_probe_battery(rotation_plane):
    reports = vp.run_assumption_probes(rotation_plane, n_samples=300, seed=42)
    assert [r.assumption for r in reports] == [
        "nonempty_solution", "lipschitz", "quasar_monotone", "monotone"]
    assert all(r.passed for r in reports)
    assert all(r.seed == 42 for r in reports)


def test_assumption_probes_deterministic(rotation_plane):
    a = vp.run_assumption_probes(rotation_plane, n_samples=100, seed=7)
    b = vp.run_assumption_probes(rotation_plane, n_samples=100, seed=7)
    assert [(r.passed, r.worst_violation) for r in a] == \
           [(r.passed, r.worst_violation) for r in b]


def test_assumption_probes_catch_negation():
    problem = vp.ProblemInstance(vp.Negation(2), vp.WholeSpace(2),
                                 known_solutions=[[0.0, 0.0]])
    reports = {r.assumption: r for r in vp.run_assumption_probes(problem, n_samples=200)}
    assert reports["nonempty_solution"].passed
    assert not reports["quasar_monotone"].passed
    assert reports["quasar_monotone"].witness is not None
    assert not reports["monotone"].passed


def test_nonempty_solution_probe_rejects_non_solution():
    # a feasible point that is not a zero of the operator
    problem = vp.ProblemInstance(vp.Affine(np.eye(2), offset=[1.0, 0.0]),
                                 vp.WholeSpace(2), known_solutions=[[0.0, 0.0]])
    report = vp.check_nonempty_solution(problem)
    assert not report.passed
    assert report.worst_violation > 0.5
    assert report.witness is not None
