"""Problem model: operator + feasible set, residuals, and assumption probes.

A point solves the constrained problem iff the natural (fixed-point) residual
``||u - P(u - lam*F(u))||`` vanishes, for any fixed positive stepsize.
Membership tests use the canonical stepsize 1 so results do not depend on an
arbitrary choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .validation import DimensionMismatchError, as_point, check_stepsize

__all__ = [
    "ProblemInstance",
    "AssumptionReport",
    "SOLUTION_RESIDUAL_TOL",
    "natural_residual",
    "distance_to_solution",
    "is_solution",
    "check_quasar_monotone",
    "check_monotone",
    "estimate_lipschitz",
    "check_nonempty_solution",
    "sample_points",
    "run_assumption_probes",
]

SOLUTION_RESIDUAL_TOL = 1e-10
FEASIBILITY_TOL = 1e-12

PROBE_BOX_HALF_WIDTH = 10.0
DEFAULT_PROBE_SAMPLES = 1000
DEFAULT_PROBE_SEED = 42
DEFAULT_PROBE_TOL = 1e-9


class ProblemInstance:
    """An operator, a feasible set, a Lipschitz constant, and reference solutions.

    ``lipschitz`` defaults to the operator's declared constant.  Every listed
    known solution must be feasible (its projection returns it to within
    1e-12); solutions are reference data for distance reporting and probes,
    not an exhaustive solution set.
    """

    def __init__(self, operator, feasible_set, lipschitz: float | None = None,
                 known_solutions=None):
        self.operator = operator
        self.feasible_set = feasible_set
        n = int(operator.dimension)
        if int(feasible_set.dimension) != n:
            raise DimensionMismatchError(n, int(feasible_set.dimension),
                                         context="feasible set")
        self.dimension = n
        if lipschitz is None:
            lipschitz = operator.lipschitz
        self.lipschitz = float(lipschitz)
        if not np.isfinite(self.lipschitz) or self.lipschitz <= 0.0:
            raise ValueError(f"lipschitz must be positive, got {self.lipschitz}")
        solutions = []
        for i, s in enumerate(known_solutions or []):
            s = as_point(s, n, name=f"known solution {i}")
            if np.linalg.norm(feasible_set.project(s) - s) > FEASIBILITY_TOL:
                raise ValueError(f"known solution {i} is not feasible: {s.tolist()}")
            solutions.append(s)
        self.known_solutions = tuple(solutions)

    def __repr__(self):
        return (f"ProblemInstance(operator={self.operator!r}, "
                f"set={self.feasible_set.kind!r}, L={self.lipschitz})")


@dataclass(frozen=True)
class AssumptionReport:
    """Outcome of one sampled assumption probe.

    ``worst_violation`` is clamped to 0 whenever the probe passes so reports
    are comparable across runs; a witness is attached whenever it fails.
    """

    assumption: str  # nonempty_solution | lipschitz | quasar_monotone | monotone
    passed: bool
    worst_violation: float
    witness: tuple[np.ndarray, np.ndarray] | None = None
    seed: int | None = None


def _plain_dot(a, b) -> float:
    # sequential multiply-add without FMA contraction: keeps skew-operator
    # identities (e.g. <F(u)-F(v), u-v> for the rotation) exactly zero, where
    # a fused BLAS dot leaves the product's rounding residue
    total = 0.0
    for x, y in zip(a, b):
        total += float(x) * float(y)
    return total


def natural_residual(problem: ProblemInstance, u, stepsize: float) -> float:
    """``||u - P(u - lam*F(u))||``; zero exactly at solutions, for any lam > 0."""
    lam = check_stepsize(stepsize)
    u = as_point(u, problem.dimension, name="u")
    step = problem.feasible_set.project(u - lam * problem.operator(u))
    return float(np.linalg.norm(u - step))


def distance_to_solution(problem: ProblemInstance, u) -> float:
    """Euclidean distance from ``u`` to the nearest listed known solution."""
    if not problem.known_solutions:
        raise ValueError("no reference solution")
    u = as_point(u, problem.dimension, name="u")
    return min(float(np.linalg.norm(u - s)) for s in problem.known_solutions)


def is_solution(problem: ProblemInstance, u, tol: float = SOLUTION_RESIDUAL_TOL) -> bool:
    """Membership test via the natural residual at the canonical stepsize 1."""
    return natural_residual(problem, u, 1.0) <= tol


def check_quasar_monotone(problem: ProblemInstance, samples,
                          tol: float = DEFAULT_PROBE_TOL,
                          seed: int | None = None) -> AssumptionReport:
    """Probe ``<F(u), u - u*> >= 0`` over samples and all known solutions."""
    if not problem.known_solutions:
        raise ValueError("no reference solution")
    samples = [as_point(s, problem.dimension, name="sample") for s in samples]
    if not samples:
        raise ValueError("samples must be nonempty")
    worst = np.inf
    witness = None
    for u in samples:
        fu = problem.operator(u)
        for u_star in problem.known_solutions:
            value = _plain_dot(fu, u - u_star)
            if value < worst:
                worst = value
                witness = (u, u_star)
    passed = worst >= -tol
    return AssumptionReport(
        assumption="quasar_monotone",
        passed=passed,
        worst_violation=0.0 if passed else -worst,
        witness=None if passed else witness,
        seed=seed,
    )


def check_monotone(problem: ProblemInstance, sample_pairs,
                   tol: float = DEFAULT_PROBE_TOL,
                   seed: int | None = None) -> AssumptionReport:
    """Probe ``<F(u) - F(v), u - v> >= 0`` over sampled pairs."""
    pairs = [(as_point(u, problem.dimension, name="u"),
              as_point(v, problem.dimension, name="v")) for u, v in sample_pairs]
    if not pairs:
        raise ValueError("sample_pairs must be nonempty")
    worst = np.inf
    witness = None
    for u, v in pairs:
        value = _plain_dot(problem.operator(u) - problem.operator(v), u - v)
        if value < worst:
            worst = value
            witness = (u, v)
    passed = worst >= -tol
    return AssumptionReport(
        assumption="monotone",
        passed=passed,
        worst_violation=0.0 if passed else -worst,
        witness=None if passed else witness,
        seed=seed,
    )


def estimate_lipschitz(problem: ProblemInstance, sample_pairs) -> float:
    """Max of ``||F(u)-F(v)|| / ||u-v||`` over pairs: a lower bound on the true constant.

    Coincident pairs are skipped; if every pair is coincident there is nothing
    to estimate and a ValueError is raised.
    """
    best = None
    for u, v in sample_pairs:
        u = as_point(u, problem.dimension, name="u")
        v = as_point(v, problem.dimension, name="v")
        d = u - v
        gap = math.sqrt(_plain_dot(d, d))
        if gap == 0.0:
            continue
        fd = problem.operator(u) - problem.operator(v)
        ratio = math.sqrt(_plain_dot(fd, fd)) / gap
        if best is None or ratio > best:
            best = ratio
    if best is None:
        raise ValueError("all sample pairs are coincident; cannot estimate a ratio")
    return best


def check_nonempty_solution(problem: ProblemInstance,
                            tol: float = SOLUTION_RESIDUAL_TOL,
                            seed: int | None = None) -> AssumptionReport:
    """Verify each listed known solution actually solves the problem."""
    if not problem.known_solutions:
        raise ValueError("no reference solution")
    worst = 0.0
    witness = None
    for s in problem.known_solutions:
        residual = natural_residual(problem, s, 1.0)
        if residual > worst:
            worst = residual
            target = problem.feasible_set.project(s - problem.operator(s))
            witness = (s, target)
    passed = worst <= tol
    return AssumptionReport(
        assumption="nonempty_solution",
        passed=passed,
        worst_violation=0.0 if passed else worst,
        witness=None if passed else witness,
        seed=seed,
    )


def _lipschitz_report(problem: ProblemInstance, pairs, tol: float,
                      seed: int | None) -> AssumptionReport:
    worst = -np.inf
    witness = None
    for u, v in pairs:
        d = u - v
        gap = math.sqrt(_plain_dot(d, d))
        if gap == 0.0:
            continue
        fd = problem.operator(u) - problem.operator(v)
        excess = math.sqrt(_plain_dot(fd, fd)) / gap - problem.lipschitz
        if excess > worst:
            worst = excess
            witness = (u, v)
    passed = worst <= tol
    return AssumptionReport(
        assumption="lipschitz",
        passed=passed,
        worst_violation=0.0 if passed else worst,
        witness=None if passed else witness,
        seed=seed,
    )


def sample_points(dimension: int, count: int, seed: int,
                  half_width: float = PROBE_BOX_HALF_WIDTH) -> np.ndarray:
    """Deterministic uniform samples in the probe box ``[-w, w]^n``."""
    rng = np.random.default_rng(seed)
    return rng.uniform(-half_width, half_width, size=(count, dimension))


def run_assumption_probes(problem: ProblemInstance,
                          n_samples: int = DEFAULT_PROBE_SAMPLES,
                          seed: int = DEFAULT_PROBE_SEED,
                          tol: float = DEFAULT_PROBE_TOL) -> list[AssumptionReport]:
    """Run the full probe battery on deterministic box samples.

    Exact verification over the whole space is impossible, so probes sample
    ``n_samples`` points (and pairs) uniformly from ``[-10, 10]^n`` with the
    given seed; the seed is recorded on every report.
    """
    if not problem.known_solutions:
        raise ValueError("no reference solution")
    pts = sample_points(problem.dimension, 2 * n_samples, seed)
    singles = pts[:n_samples]
    pairs = list(zip(pts[:n_samples], pts[n_samples:]))
    return [
        check_nonempty_solution(problem, seed=seed),
        _lipschitz_report(problem, pairs, tol, seed),
        check_quasar_monotone(problem, singles, tol, seed=seed),
        check_monotone(problem, pairs, tol, seed=seed),
    ]
