"""The five projection-type iterative schemes, as steps and as estimators.

Module-level step functions expose one iteration of each scheme exactly as
specified; the solver classes wrap them in a logged run loop with stopping
rules and the usual estimator API (``fit``, ``get_params``, fitted ``*_``
attributes).

Stopping rules, applied in order after each step:

* divergence: a non-finite iterate or ``||u|| > 1e12``;
* stall: step displacement ``<= 1e-14`` for ``stall_window`` consecutive
  steps (stall is checked before the residual so an exact fixed point that
  is not a wanted solution is reported as stagnation, not convergence);
* convergence: natural residual ``<= residual_tol``.

Both ``residual_tol`` and ``stall_window`` accept None, which disables the
corresponding rule; the run then ends at ``max_iter``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np
from sklearn.base import BaseEstimator

from .analysis import _lyap_a, _lyap_b
from .validation import as_point, check_stepsize

__all__ = [
    "METHODS",
    "DIVERGENCE_LIMIT",
    "STALL_STEP",
    "eg_step",
    "tseng_step",
    "popov_step",
    "frb_step",
    "ogda_step",
    "TrajectoryRow",
    "TrajectoryRecord",
    "ExtragradientSolver",
    "TsengSolver",
    "PopovSolver",
    "FRBSolver",
    "OGDASolver",
    "SOLVER_KINDS",
    "make_solver",
]

METHODS = ("extragradient", "tseng", "popov", "frb", "ogda")

DIVERGENCE_LIMIT = 1e12
STALL_STEP = 1e-14
RATE_WINDOW = 50


def eg_step(problem, stepsize, u):
    """One extragradient iteration: extrapolate, then correct.

    ``v = P(u - lam*F(u))``, ``u_next = P(u - lam*F(v))``.  Two operator
    evaluations and two projections.
    """
    lam = check_stepsize(stepsize)
    u = as_point(u, problem.dimension, name="u")
    f = problem.operator
    p = problem.feasible_set.project
    v = p(u - lam * f(u))
    return p(u - lam * f(v)), v


def tseng_step(problem, stepsize, u):
    """One forward-backward-forward iteration.

    ``v = P(u - lam*F(u))``, ``u_next = v - lam*(F(v) - F(u))``.  Two operator
    evaluations, a single projection; coincides with the extragradient step
    when the feasible set is the whole space.
    """
    lam = check_stepsize(stepsize)
    u = as_point(u, problem.dimension, name="u")
    f = problem.operator
    fu = f(u)
    v = problem.feasible_set.project(u - lam * fu)
    return v - lam * (f(v) - fu), v


def popov_step(problem, stepsize, u, v):
    """One two-step extrapolation iteration with a single operator evaluation.

    ``u_next = P(u - lam*F(v))``, ``v_next = P(u_next - lam*F(v))``: the one
    evaluation ``F(v)`` is reused by both projections.
    """
    lam = check_stepsize(stepsize)
    u = as_point(u, problem.dimension, name="u")
    v = as_point(v, problem.dimension, name="v")
    fv = problem.operator(v)
    p = problem.feasible_set.project
    u_next = p(u - lam * fv)
    return u_next, p(u_next - lam * fv)


def frb_step(problem, stepsize, u, f_u, f_prev):
    """One reflected-gradient iteration with a single projection.

    ``u_next = P(u - lam*(2*f_u - f_prev))`` followed by the step's one fresh
    evaluation ``F(u_next)``, returned so the caller can carry it forward.
    """
    lam = check_stepsize(stepsize)
    u = as_point(u, problem.dimension, name="u")
    f_u = as_point(f_u, problem.dimension, name="f_u")
    f_prev = as_point(f_prev, problem.dimension, name="f_prev")
    u_next = problem.feasible_set.project(u - lam * (2.0 * f_u - f_prev))
    return u_next, problem.operator(u_next)


def ogda_step(stepsize, u, u_prev, operator):
    """One optimistic (reflected) gradient iteration, unconstrained form.

    ``u_next = u - lam*F(2*u - u_prev)``.
    """
    lam = check_stepsize(stepsize)
    u = as_point(u, name="u")
    u_prev = as_point(u_prev, u.size, name="u_prev")
    return u - lam * operator(2.0 * u - u_prev)


@dataclass(eq=False)
class TrajectoryRow:
    k: int
    u: np.ndarray
    v: np.ndarray | None
    residual: float
    distance: float | None
    lyapunov_a: float | None = None
    lyapunov_b: float | None = None


@dataclass(eq=False)
class TrajectoryRecord:
    """Full per-iteration log of one run plus its termination summary."""

    method: str
    stepsize: float
    dimension: int
    termination: str  # converged | stalled | max_iter | diverged
    rows: list[TrajectoryRow] = field(repr=False)
    empirical_rate: float | None = None

    @property
    def iterations(self) -> int:
        return self.rows[-1].k

    @property
    def final_residual(self) -> float:
        return self.rows[-1].residual

    @property
    def final_distance(self) -> float | None:
        return self.rows[-1].distance

    def iterates(self) -> np.ndarray:
        """All logged iterates as a (rows, dimension) array."""
        return np.stack([row.u for row in self.rows])

    def csv_header(self) -> list[str]:
        n = self.dimension
        return (["k"]
                + [f"u{i}" for i in range(1, n + 1)]
                + [f"v{i}" for i in range(1, n + 1)]
                + ["residual", "dist", "A", "B"])

    def write_csv(self, target) -> None:
        """Write the trajectory in the interchange CSV schema.

        Header ``k,u1,...,un,v1,...,vn,residual,dist,A,B``; undefined cells
        are empty strings; numbers carry 17 significant digits so 64-bit
        values round-trip exactly.
        """
        if isinstance(target, (str, bytes)) or hasattr(target, "__fspath__"):
            with open(target, "w", newline="") as fh:
                self._write_csv(fh)
        else:
            self._write_csv(target)

    def _write_csv(self, fh) -> None:
        writer = csv.writer(fh)
        writer.writerow(self.csv_header())
        blank_v = [""] * self.dimension
        for row in self.rows:
            cells = [str(row.k)]
            cells += [_fmt(x) for x in row.u]
            cells += [_fmt(x) for x in row.v] if row.v is not None else blank_v
            cells.append(_fmt(row.residual))
            cells.append(_fmt(row.distance) if row.distance is not None else "")
            cells.append(_fmt(row.lyapunov_a) if row.lyapunov_a is not None else "")
            cells.append(_fmt(row.lyapunov_b) if row.lyapunov_b is not None else "")
            writer.writerow(cells)

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        self._write_csv(buf)
        return buf.getvalue()


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _run_loop(problem, method, lam, u0, v0, max_iter, residual_tol, stall_window):
    f = problem.operator
    # the loop produces validated points itself, so use the raw projection
    # kernels; non-finite intermediates are handled by the divergence guards
    project = problem.feasible_set._project_raw
    has_reference = bool(problem.known_solutions)
    lyapunov_on = (method in ("popov", "ogda")
                   and problem.feasible_set.kind == "whole_space"
                   and has_reference)
    scaled = lam * problem.lipschitz
    alpha = scaled * scaled  # float pow would raise on overflow; mult saturates
    u_star = problem.known_solutions[0] if lyapunov_on else None

    rows: list[TrajectoryRow] = []

    def norm_of(x):
        return math.sqrt(float(np.dot(x, x)))

    def residual_of(u):
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                return norm_of(u - project(u - lam * f(u)))
        except ValueError:
            # the stepped point overflowed to non-finite; no meaningful residual
            return float("nan")

    def distance_of(u):
        if not has_reference:
            return None
        return min(norm_of(u - s) for s in problem.known_solutions)

    def append_row(k, u, v):
        a = None
        if lyapunov_on and k >= 2:
            a = _lyap_a("standard", u, rows[k - 1].u, rows[k - 1].v,
                        rows[k - 2].v, u_star, alpha)
        rows.append(TrajectoryRow(k=k, u=u, v=v,
                                  residual=residual_of(u),
                                  distance=distance_of(u),
                                  lyapunov_a=a))

    def append_diverged_row(k, u):
        finite = bool(np.isfinite(u).all())
        rows.append(TrajectoryRow(
            k=k, u=u, v=None,
            residual=residual_of(u) if finite else float("nan"),
            distance=(min(float(np.linalg.norm(u - s)) for s in problem.known_solutions)
                      if has_reference else None),
        ))

    # method-specific initial state
    u = u0
    start_k = 0
    v = f_curr = f_prev = u_prev = None
    if method == "popov":
        v = v0
        append_row(0, u0, v0)
    elif method == "ogda":
        # seed so the first extrapolation point is exactly v0
        u_prev = 2.0 * u0 - v0
        append_row(0, u0, v0)
    elif method == "frb":
        append_row(0, u0, None)
        f_prev = f(u0)  # warm-up evaluations for the two initial points
        u = v0
        f_curr = f(u)
        append_row(1, u, None)
        start_k = 1
    else:
        append_row(0, u0, None)

    termination = "max_iter"
    streak = 0
    # overflow to inf is handled divergence, not an anomaly
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(start_k, max_iter):
            try:
                if method == "extragradient":
                    u_next, v_used = eg_step(problem, lam, u)
                    rows[k].v = v_used
                    row_v = None
                elif method == "tseng":
                    u_next, v_used = tseng_step(problem, lam, u)
                    rows[k].v = v_used
                    row_v = None
                elif method == "popov":
                    fv = f(v)
                    u_next = project(u - lam * fv)
                    row_v = project(u_next - lam * fv)
                elif method == "ogda":
                    u_next = u - lam * f(2.0 * u - u_prev)
                    row_v = 2.0 * u_next - u
                else:  # frb
                    u_next = project(u - lam * (2.0 * f_curr - f_prev))
                    row_v = None
            except ValueError:
                # an intermediate overflowed to non-finite inside a validated call
                append_diverged_row(k + 1, np.full(problem.dimension, np.nan))
                termination = "diverged"
                break

            if not np.isfinite(u_next).all() or norm_of(u_next) > DIVERGENCE_LIMIT:
                append_diverged_row(k + 1, u_next)
                termination = "diverged"
                break

            append_row(k + 1, u_next, row_v)
            if lyapunov_on and k >= 2:
                rows[k].lyapunov_b = _lyap_b("standard", u_next, rows[k].u,
                                             rows[k].v, rows[k - 1].v, alpha)

            delta = norm_of(u_next - u)
            if method == "popov":
                v = row_v
            elif method == "ogda":
                u_prev = u
            elif method == "frb":
                f_prev, f_curr = f_curr, f(u_next)
            u = u_next

            streak = streak + 1 if delta <= STALL_STEP else 0
            if stall_window is not None and streak >= stall_window:
                termination = "stalled"
                break
            if residual_tol is not None and rows[-1].residual <= residual_tol:
                termination = "converged"
                break

    record = TrajectoryRecord(
        method=method,
        stepsize=lam,
        dimension=problem.dimension,
        termination=termination,
        rows=rows,
    )
    record.empirical_rate = _empirical_rate(rows)
    return record


def _empirical_rate(rows) -> float | None:
    # geometric-mean ratio of consecutive distances over the trailing window
    distances = [row.distance for row in rows]
    if len(distances) < 2 or any(d is None for d in distances):
        return None
    window = min(RATE_WINDOW, len(distances) - 1)
    tail = distances[-(window + 1):]
    if any(d <= 0.0 for d in tail):
        return None
    return float((tail[-1] / tail[0]) ** (1.0 / window))


class _BaseSolver(BaseEstimator):
    """Shared configuration and run loop for the five schemes.

    Parameters
    ----------
    stepsize : float
        Positive stepsize; interpreted as ``lam = stepsize / L`` when
        ``relative`` is true, otherwise used as-is.
    relative : bool
        Resolve the stepsize against the problem's Lipschitz constant.
    u0 : array-like or None
        Initial iterate (may instead be supplied to ``fit``).
    v0 : array-like or None
        Second initial point: the first extrapolation point for popov/ogda,
        the second iterate for frb.  Defaults to ``u0``.  Not accepted by
        extragradient/tseng.
    max_iter : int
    residual_tol : float or None
        Natural-residual convergence threshold; None disables the test.
    stall_window : int or None
        Consecutive sub-1e-14 steps before declaring a stall; None disables.

    Attributes (after ``fit``)
    --------------------------
    trajectory_ : TrajectoryRecord
    u_ : ndarray — final iterate
    termination_, n_iter_, final_residual_, final_distance_, empirical_rate_
    stepsize_ : float — resolved stepsize
    relative_stepsize_ : float — resolved stepsize times the Lipschitz constant
    """

    _method: ClassVar[str] = ""

    def __init__(self, stepsize=0.5, relative=False, u0=None, v0=None,
                 max_iter=1000, residual_tol=1e-8, stall_window=5):
        self.stepsize = stepsize
        self.relative = relative
        self.u0 = u0
        self.v0 = v0
        self.max_iter = max_iter
        self.residual_tol = residual_tol
        self.stall_window = stall_window

    @property
    def method(self) -> str:
        return self._method

    def resolve_stepsize(self, problem) -> float:
        lam = check_stepsize(self.stepsize)
        if self.relative:
            lam = lam / problem.lipschitz
        return check_stepsize(lam)

    def fit(self, problem, u0=None, v0=None):
        """Run the scheme on ``problem`` and record the trajectory."""
        method = self._method
        lam = self.resolve_stepsize(problem)
        max_iter = int(self.max_iter)
        if max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        residual_tol = self.residual_tol
        if residual_tol is not None:
            residual_tol = float(residual_tol)
            if residual_tol <= 0.0:
                raise ValueError("residual_tol must be positive (or None to disable)")
        stall_window = self.stall_window
        if stall_window is not None:
            stall_window = int(stall_window)
            if stall_window < 1:
                raise ValueError("stall_window must be >= 1 (or None to disable)")
        if method == "ogda" and problem.feasible_set.kind != "whole_space":
            raise ValueError("ogda is the unconstrained form and requires a "
                             "whole_space feasible set")
        u0 = u0 if u0 is not None else self.u0
        if u0 is None:
            raise ValueError("initial point u0 is required")
        u0 = as_point(u0, problem.dimension, name="u0").copy()
        v0 = v0 if v0 is not None else self.v0
        if method in ("extragradient", "tseng"):
            if v0 is not None:
                raise ValueError(f"{method} does not take a second initial point")
            v0 = None
        else:
            v0 = as_point(v0, problem.dimension, name="v0").copy() \
                if v0 is not None else u0.copy()

        record = _run_loop(problem, method, lam, u0, v0, max_iter,
                           residual_tol, stall_window)
        self.trajectory_ = record
        self.u_ = record.rows[-1].u
        self.termination_ = record.termination
        self.n_iter_ = record.iterations
        self.final_residual_ = record.final_residual
        self.final_distance_ = record.final_distance
        self.empirical_rate_ = record.empirical_rate
        self.stepsize_ = lam
        self.relative_stepsize_ = lam * problem.lipschitz
        return self


class ExtragradientSolver(_BaseSolver):
    """Two evaluations and two projections per iteration."""

    _method = "extragradient"


class TsengSolver(_BaseSolver):
    """Two evaluations, one projection per iteration."""

    _method = "tseng"


class PopovSolver(_BaseSolver):
    """One evaluation, two projections per iteration."""

    _method = "popov"


class FRBSolver(_BaseSolver):
    """One evaluation, one projection per iteration (reflected forward term)."""

    _method = "frb"


class OGDASolver(_BaseSolver):
    """Unconstrained optimistic-gradient form; one evaluation per iteration."""

    _method = "ogda"


SOLVER_KINDS = {
    "extragradient": ExtragradientSolver,
    "tseng": TsengSolver,
    "popov": PopovSolver,
    "frb": FRBSolver,
    "ogda": OGDASolver,
}


def make_solver(method: str, **params) -> _BaseSolver:
    """Instantiate the solver class for a method tag."""
    try:
        cls = SOLVER_KINDS[method]
    except KeyError:
        raise ValueError(
            f"unknown method {method!r}, expected one of {sorted(SOLVER_KINDS)}"
        ) from None
    return cls(**params)
