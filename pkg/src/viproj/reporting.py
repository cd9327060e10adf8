"""Run summaries in the interchange JSON layout, shared by the CLI commands."""

from __future__ import annotations

import math

from .analysis import (attach_lyapunov, build_companion, eg_map_spectral_radius,
                       gelfand_spectral_radius, one_step_matrix,
                       popov_characteristic_roots)

__all__ = ["method_spectral_radius", "build_summary"]


def method_spectral_radius(problem, method: str, stepsize: float) -> float | None:
    """Spectral radius of the method's linear iteration map, when defined.

    Defined for linear operators on the whole space.  The planar rotation has
    closed forms; other linear operators go through the Gelfand estimator.
    Returns None when no linear one-step/two-step map exists.
    """
    operator = problem.operator
    if problem.feasible_set.kind != "whole_space" or not operator.is_linear:
        return None
    if method in ("popov", "frb", "ogda"):
        if operator.kind == "rotation":
            return popov_characteristic_roots(stepsize).spectral_radius
        return gelfand_spectral_radius(build_companion(operator, stepsize), tol=1e-6)
    if operator.kind == "rotation":
        return eg_map_spectral_radius(stepsize).spectral_radius
    return gelfand_spectral_radius(one_step_matrix(operator, stepsize), tol=1e-6)


def _finite_or_none(value):
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


def build_summary(problem, record, *, lyapunov_variant=None, spectral=True,
                  seed=None) -> dict:
    """Assemble the JSON summary for one finished run."""
    lam = record.stepsize
    radius = None
    if spectral:
        radius = method_spectral_radius(problem, record.method, lam)
    violations = None
    if (lyapunov_variant is not None
            and record.method in ("popov", "ogda")
            and problem.feasible_set.kind == "whole_space"
            and problem.known_solutions):
        violations = attach_lyapunov(record, problem, lyapunov_variant).violation_count
    return {
        "method": record.method,
        "lambda": lam,
        "lambda_relative": lam * problem.lipschitz,
        "L": problem.lipschitz,
        "termination": record.termination,
        "iterations": record.iterations,
        "final_residual": _finite_or_none(record.final_residual),
        "final_distance": _finite_or_none(record.final_distance),
        "empirical_rate": _finite_or_none(record.empirical_rate),
        "spectral_radius": radius,
        "lyapunov_violations": violations,
        "seed": seed,
    }
