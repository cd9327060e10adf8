"""Hard-coded reproduction scenarios for the `reproduce` command.

Each preset runs a fixed boundary-case experiment and checks its outcome
against the corresponding acceptance thresholds.  Presets are code, not
config files, so the scenarios cannot drift with config edits.  The gamma
scale applies to the two constrained counterexample presets, whose verdicts
are gamma-invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analysis import attach_lyapunov, popov_characteristic_roots
from .operators import Rotation, ScaledIdentityPlusRotation
from .problem import ProblemInstance
from .reporting import build_summary
from .sets import Halfspace, WholeSpace
from .solvers import FRBSolver, PopovSolver

__all__ = ["PresetReport", "PRESET_NAMES", "run_preset"]

PRESET_NAMES = ("theorem1", "frb_counterexample", "theorem3_roots", "figure1",
                "proposition1")

CRITICAL_UNCONSTRAINED = 1.0 / math.sqrt(3.0)


@dataclass
class PresetReport:
    name: str
    passed: bool
    lines: list[str]
    summary: dict
    record: object | None = None
    csv_rows: list[list] | None = field(default=None, repr=False)
    csv_header: list[str] | None = None


def _check(lines: list[str], label: str, ok: bool, detail: str = "") -> bool:
    status = "ok" if ok else "FAILED"
    suffix = f" ({detail})" if detail else ""
    lines.append(f"  [{status}] {label}{suffix}")
    return ok


def _halfspace_problem() -> ProblemInstance:
    return ProblemInstance(Rotation(), Halfspace([1.0, 0.0], 0.0),
                           known_solutions=[[0.0, 0.0]])


def _plane_problem(operator=None) -> ProblemInstance:
    return ProblemInstance(operator or Rotation(), WholeSpace(2),
                           known_solutions=[[0.0, 0.0]])


def _stationary_verdict(record, u0, gamma, lines) -> bool:
    iterates = record.iterates()
    bitwise = all(np.array_equal(row, u0) for row in iterates)
    ok = _check(lines, f"all {len(iterates) - 1} iterates stay at "
                       f"({u0[0]:g}, {u0[1]:g}) bitwise", bitwise)
    distances = [row.distance for row in record.rows]
    constant = all(d == distances[0] for d in distances)
    ok &= _check(lines, "distance to the origin never moves", constant,
                 f"stays {distances[0]:.17g}, gamma={gamma:g}")
    residual_zero = all(row.residual == 0.0 for row in record.rows)
    ok &= _check(lines, "fixed-point residual is exactly 0 at the boundary point",
                 residual_zero)
    return ok


def preset_theorem1(gamma: float = 1.0) -> PresetReport:
    """Constrained two-step scheme at the 1/(2L) boundary: an exact stall.

    The halfspace {x1 >= 0} with the planar rotation, stepsize 0.5, started
    at (0, -gamma): the iterate never moves, so its distance to the origin
    reference solution stays at gamma forever.
    """
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    problem = _halfspace_problem()
    u0 = np.array([0.0, -gamma])
    solver = PopovSolver(stepsize=0.5, u0=u0, v0=u0, max_iter=100,
                         residual_tol=None, stall_window=None)
    solver.fit(problem)
    record = solver.trajectory_
    lines = [f"theorem1: constrained popov at the 1/(2L) stepsize boundary, "
             f"start (0, -{gamma:g})"]
    passed = _stationary_verdict(record, u0, gamma, lines)
    summary = build_summary(problem, record, seed=None)
    summary["preset"] = {"name": "theorem1", "gamma": gamma, "passed": passed}
    return PresetReport("theorem1", passed, lines, summary, record=record)


def preset_frb_counterexample(gamma: float = 1.0) -> PresetReport:
    """Same boundary scenario for the single-projection reflected scheme."""
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    problem = _halfspace_problem()
    u0 = np.array([0.0, -gamma])
    solver = FRBSolver(stepsize=0.5, u0=u0, v0=u0, max_iter=100,
                       residual_tol=None, stall_window=None)
    solver.fit(problem)
    record = solver.trajectory_
    lines = [f"frb_counterexample: constrained reflected scheme at the 1/(2L) "
             f"boundary, start (0, -{gamma:g})"]
    u2 = record.rows[2].u
    passed = _check(lines, "the first computed iterate returns to the start "
                           "point bitwise", np.array_equal(u2, u0),
                    f"u2=({u2[0]:.17g}, {u2[1]:.17g})")
    passed &= _stationary_verdict(record, u0, gamma, lines)
    summary = build_summary(problem, record, seed=None)
    summary["preset"] = {"name": "frb_counterexample", "gamma": gamma,
                         "passed": passed}
    return PresetReport("frb_counterexample", passed, lines, summary,
                        record=record)


def preset_theorem3_roots() -> PresetReport:
    """Characteristic roots at and around the unconstrained boundary 1/(sqrt(3)L)."""
    lam = CRITICAL_UNCONSTRAINED
    lines = ["theorem3_roots: characteristic roots of the unconstrained "
             "two-step recursion at the critical stepsize"]
    at = popov_characteristic_roots(lam)
    below = popov_characteristic_roots(lam - 0.01)
    above = popov_characteristic_roots(lam + 0.01)
    moduli = sorted(at.moduli)
    expected = (lam, 1.0)  # 1/sqrt(3) and 1
    passed = _check(
        lines, "moduli at the boundary are {1/sqrt(3), 1} within 1e-12",
        abs(moduli[0] - expected[0]) <= 1e-12 and abs(moduli[1] - expected[1]) <= 1e-12,
        f"got {moduli[0]:.16f}, {moduli[1]:.16f}")
    passed &= _check(lines, "regime at the boundary is marginal",
                     at.regime == "marginal", at.regime)
    passed &= _check(lines, "radius just below the boundary is < 1",
                     below.spectral_radius < 1.0,
                     f"{below.spectral_radius:.12f} at lambda-0.01")
    passed &= _check(lines, "radius just above the boundary is > 1",
                     above.spectral_radius > 1.0,
                     f"{above.spectral_radius:.12f} at lambda+0.01")
    header = ["lambda", "root1_re", "root1_im", "root2_re", "root2_im",
              "modulus1", "modulus2", "spectral_radius", "regime"]
    rows = []
    for report in (below, at, above):
        r1, r2 = report.roots
        rows.append([report.stepsize, r1.real, r1.imag, r2.real, r2.imag,
                     report.moduli[0], report.moduli[1],
                     report.spectral_radius, report.regime])
    summary = {
        "preset": {"name": "theorem3_roots", "passed": passed},
        "lambda": lam,
        "moduli": list(at.moduli),
        "spectral_radius": at.spectral_radius,
        "regime": at.regime,
        "radius_below": below.spectral_radius,
        "radius_above": above.spectral_radius,
    }
    return PresetReport("theorem3_roots", passed, lines, summary,
                        csv_rows=rows, csv_header=header)


def preset_figure1() -> PresetReport:
    """Marginal orbit: 1000 unconstrained iterations at the critical stepsize.

    Started from (5, 5) the orbit settles on a circle of radius about 7.07
    instead of converging; the verdict checks the tail radii stay inside a
    5 percent band and the orbit never collapses toward the origin.
    """
    problem = _plane_problem()
    u0 = np.array([5.0, 5.0])
    solver = PopovSolver(stepsize=CRITICAL_UNCONSTRAINED, u0=u0, v0=u0,
                         max_iter=1000, residual_tol=1e-9, stall_window=5)
    solver.fit(problem)
    record = solver.trajectory_
    radii = np.linalg.norm(record.iterates(), axis=1)
    tail = radii[100:]
    lines = ["figure1: unconstrained popov at the critical stepsize, "
             "start (5, 5), 1000 iterations"]
    passed = _check(lines, "run reaches the iteration cap without converging",
                    record.termination == "max_iter", record.termination)
    passed &= _check(lines, "tail radii (k >= 100) inside [6.72, 7.43]",
                     bool(tail.min() >= 6.72 and tail.max() <= 7.43),
                     f"min {tail.min():.6f}, max {tail.max():.6f}")
    passed &= _check(lines, "orbit never approaches the solution "
                            "(radius >= 0.5 throughout)",
                     bool(radii.min() >= 0.5), f"min {radii.min():.6f}")
    summary = build_summary(problem, record, seed=None)
    summary["radius_min"] = float(radii.min())
    summary["radius_max"] = float(radii.max())
    summary["radius_min_tail"] = float(tail.min())
    summary["radius_max_tail"] = float(tail.max())
    summary["tail_start"] = 100
    summary["preset"] = {"name": "figure1", "passed": passed}
    return PresetReport("figure1", passed, lines, summary, record=record)


def preset_proposition1() -> PresetReport:
    """Descent monotonicity of both Lyapunov pairs inside the boundary."""
    configs = []
    for operator in (Rotation(), ScaledIdentityPlusRotation(0.5)):
        for lam in (0.1, 0.3, 0.5):
            configs.append((operator, lam))
    lines = ["proposition1: Lyapunov descent along 1000-iteration "
             "unconstrained popov trajectories"]
    passed = True
    results = []
    sample_record = None
    for operator, lam in configs:
        problem = _plane_problem(operator)
        solver = PopovSolver(stepsize=lam, u0=[5.0, 5.0], max_iter=1000,
                             residual_tol=None, stall_window=None)
        solver.fit(problem)
        record = solver.trajectory_
        if operator.kind == "rotation" and lam == 0.5:
            sample_record = record
        for variant in ("standard", "alternative"):
            trace = attach_lyapunov(record, problem, variant)
            ok = trace.violation_count == 0
            passed &= _check(
                lines,
                f"{operator.kind} lambda={lam:g} variant={variant}: no descent "
                f"violations", ok,
                f"alpha={trace.alpha:.4f}, violations={trace.violation_count}")
            results.append({"operator": operator.kind, "lambda": lam,
                            "variant": variant, "alpha": trace.alpha,
                            "violations": trace.violation_count})
    summary = {"preset": {"name": "proposition1", "passed": passed},
               "results": results}
    return PresetReport("proposition1", passed, lines, summary,
                        record=sample_record)


def run_preset(name: str, gamma: float = 1.0) -> PresetReport:
    if name == "theorem1":
        return preset_theorem1(gamma)
    if name == "frb_counterexample":
        return preset_frb_counterexample(gamma)
    if name == "theorem3_roots":
        return preset_theorem3_roots()
    if name == "figure1":
        return preset_figure1()
    if name == "proposition1":
        return preset_proposition1()
    raise ValueError(f"unknown preset {name!r}, expected one of {PRESET_NAMES}")
