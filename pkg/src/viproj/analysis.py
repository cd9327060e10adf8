"""Spectral analysis of the linear two-step recursions and Lyapunov monitoring.

Two families of diagnostics live here:

* closed-form characteristic roots of the complex scalar recursion induced by
  the one-evaluation two-step scheme on the planar rotation field, plus a
  Gelfand-formula spectral-radius estimator for the real block-companion form
  of any linear operator;
* the scalar descent quantities ``A_k`` / ``B_k`` whose monotone difference
  certifies convergence of the unconstrained two-step scheme, evaluated along
  recorded trajectories.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .validation import as_point, as_square_matrix, check_stepsize

__all__ = [
    "SpectralReport",
    "LyapunovRow",
    "LyapunovTrace",
    "LYAPUNOV_VARIANTS",
    "CLOSED_FORM_REGIME_TOL",
    "ESTIMATED_REGIME_TOL",
    "popov_characteristic_roots",
    "eg_map_spectral_radius",
    "build_companion",
    "one_step_matrix",
    "gelfand_spectral_radius",
    "lyapunov_A",
    "lyapunov_B",
    "attach_lyapunov",
]

# Regime classification tolerances: closed-form roots are machine accurate,
# Gelfand estimates carry the estimator's 1e-3 accuracy budget.
CLOSED_FORM_REGIME_TOL = 1e-9
ESTIMATED_REGIME_TOL = 1e-3

LYAPUNOV_VARIANTS = ("standard", "alternative")


@dataclass(frozen=True)
class SpectralReport:
    """Roots/eigenvalues of a stepped linear map and their stability regime."""

    stepsize: float
    roots: tuple[complex, ...]
    moduli: tuple[float, ...]
    spectral_radius: float
    regime: str  # "contractive" | "marginal" | "divergent"


def _classify(radius: float, tol: float) -> str:
    if radius < 1.0 - tol:
        return "contractive"
    if radius > 1.0 + tol:
        return "divergent"
    return "marginal"


def _report(stepsize: float, roots: tuple[complex, ...], tol: float) -> SpectralReport:
    moduli = tuple(abs(r) for r in roots)
    radius = max(moduli)
    return SpectralReport(
        stepsize=stepsize,
        roots=roots,
        moduli=moduli,
        spectral_radius=radius,
        regime=_classify(radius, tol),
    )


def popov_characteristic_roots(stepsize: float) -> SpectralReport:
    """Roots of ``mu^2 - (1 - 2*i*lam)*mu - i*lam = 0``.

    This quadratic governs the complex scalar recursion obtained when the
    two-step one-evaluation scheme runs unconstrained on the planar rotation
    field (identified with multiplication by ``i``).  Both roots come from the
    quadratic formula; the discriminant ``1 - 4*lam^2`` turns negative past
    ``lam = 1/2``, where its square root becomes ``i*sqrt(4*lam^2 - 1)``.
    """
    lam = check_stepsize(stepsize)
    b = complex(1.0, -2.0 * lam)
    sq = cmath.sqrt(complex(1.0 - 4.0 * lam * lam, 0.0))
    roots = (0.5 * (b + sq), 0.5 * (b - sq))
    return _report(lam, roots, CLOSED_FORM_REGIME_TOL)


def eg_map_spectral_radius(stepsize: float) -> SpectralReport:
    """Eigenvalues of the one-step extragradient map on the planar rotation.

    Unconstrained, the scheme composes to ``u -> ((1 - lam^2) I - lam R) u``
    with ``R`` the rotation matrix, whose conjugate eigenvalue pair is
    ``(1 - lam^2) -/+ i*lam``; the shared modulus is
    ``sqrt((1 - lam^2)^2 + lam^2)``.
    """
    lam = check_stepsize(stepsize)
    eig = complex(1.0 - lam * lam, -lam)
    roots = (eig, eig.conjugate())
    return _report(lam, roots, CLOSED_FORM_REGIME_TOL)


def build_companion(operator, stepsize: float, method: str = "popov") -> np.ndarray:
    """Block-companion matrix of the two-step recursion for a linear operator.

    Returns ``C = [[I - 2*lam*M, lam*M], [I, 0]]`` where ``M`` is the
    operator's matrix, so stacked states advance as
    ``(u_next, u) = C @ (u, u_prev)``.  Valid for the three methods whose
    unconstrained-linear dynamics reduce to that recursion.
    """
    if method not in ("popov", "frb", "ogda"):
        raise ValueError(
            f"companion form is defined for popov/frb/ogda, not {method!r}"
        )
    lam = float(stepsize)
    if not math.isfinite(lam) or lam < 0.0:
        raise ValueError(f"stepsize must be a nonnegative real, got {lam}")
    if not getattr(operator, "is_linear", False):
        raise ValueError("companion form requires a linear operator")
    m = as_square_matrix(operator.matrix, name="operator matrix")
    n = m.shape[0]
    eye = np.eye(n)
    top = np.hstack([eye - 2.0 * lam * m, lam * m])
    bottom = np.hstack([eye, np.zeros((n, n))])
    return np.vstack([top, bottom])


def one_step_matrix(operator, stepsize: float) -> np.ndarray:
    """Matrix of one unconstrained extragradient/Tseng iteration of a linear operator."""
    lam = check_stepsize(stepsize)
    if not getattr(operator, "is_linear", False):
        raise ValueError("one-step matrix requires a linear operator")
    m = as_square_matrix(operator.matrix, name="operator matrix")
    eye = np.eye(m.shape[0])
    return eye - lam * m + lam * lam * (m @ m)


def _two_norm_estimate(t: np.ndarray) -> float:
    # 50 rounds of the symmetric power method on T^T T, deterministic start.
    # Underestimates by at most the unconverged component, which the Gelfand
    # telescoping suppresses by the 1/m exponent.
    n = t.shape[0]
    w = np.full(n, 1.0 / math.sqrt(n))
    sigma = 0.0
    for _ in range(50):
        w = t.T @ (t @ w)
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return 0.0
        w /= norm
        sigma = norm
    return math.sqrt(sigma)


def gelfand_spectral_radius(matrix, tol: float = 1e-6) -> float:
    """Spectral radius via the limit ``rho = lim ||T^m||^(1/m)``.

    Repeatedly squares the matrix with per-squaring renormalization (so the
    stored block stays O(1) while a log-scale accumulator tracks magnitude),
    for ``m = 2^j`` up to ``2^20`` or until successive estimates differ by
    less than ``tol``.  Chosen over power iteration because the target
    matrices have complex-conjugate dominant eigenvalue pairs, on which real
    power iteration never settles; squaring is branch-free and deterministic.
    """
    t = as_square_matrix(matrix)
    if float(tol) <= 0.0:
        raise ValueError("tol must be positive")
    s = t.copy()
    log_scale = 0.0  # s == T^m * exp(log_scale)
    m = 1
    estimate = None
    for _ in range(21):
        nu = _two_norm_estimate(s)
        if nu == 0.0:
            return 0.0
        if not math.isfinite(nu):
            raise ArithmeticError("norm overflowed despite renormalization")
        current = math.exp((math.log(nu) - log_scale) / m)
        if estimate is not None and abs(current - estimate) < tol:
            return current
        estimate = current
        s = s / nu
        s = s @ s
        log_scale = 2.0 * (log_scale - math.log(nu))
        m *= 2
    return estimate


def _sq(x: np.ndarray) -> float:
    return float(np.dot(x, x))


def _lyap_a(variant: str, u_k, u_km1, v_km1, v_km2, u_star, alpha: float) -> float:
    # unvalidated core shared with the solvers' run loop
    if variant == "standard":
        return _sq(u_k - u_star) - _sq(u_km1 - v_km1) + 2.0 * alpha * _sq(v_km1 - v_km2)
    return (
        _sq(u_k - u_star)
        + 3.0 * alpha * _sq(u_k - v_km1)
        + 3.0 * alpha * alpha * _sq(v_km1 - v_km2)
        - 3.0 * alpha * _sq(u_km1 - v_km1)
    )


def _lyap_b(variant: str, u_kp1, u_k, v_k, v_km1, alpha: float) -> float:
    coeff = 1.0 - 3.0 * alpha
    if variant == "standard":
        return coeff * _sq(u_kp1 - v_k) + (2.0 / 3.0) * coeff * _sq(v_k - v_km1)
    return (
        coeff * _sq(u_kp1 - v_k)
        + coeff * _sq(u_k - v_k)
        + alpha * coeff * _sq(v_k - v_km1)
    )


def lyapunov_A(variant, u_k, u_km1, v_km1, v_km2, u_star, alpha) -> float:
    """Descent potential ``A_k`` at index k (defined for k >= 2).

    standard:
        ``||u_k - u*||^2 - ||u_{k-1} - v_{k-1}||^2 + 2a ||v_{k-1} - v_{k-2}||^2``
    alternative:
        ``||u_k - u*||^2 + 3a ||u_k - v_{k-1}||^2 + 3a^2 ||v_{k-1} - v_{k-2}||^2
        - 3a ||u_{k-1} - v_{k-1}||^2``

    with ``a = alpha = (lam * L)^2``.
    """
    if variant not in LYAPUNOV_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {LYAPUNOV_VARIANTS}")
    alpha = float(alpha)
    if alpha < 0.0:
        raise ValueError("alpha must be nonnegative")
    u_k = as_point(u_k, name="u_k")
    n = u_k.size
    u_km1 = as_point(u_km1, n, name="u_km1")
    v_km1 = as_point(v_km1, n, name="v_km1")
    v_km2 = as_point(v_km2, n, name="v_km2")
    u_star = as_point(u_star, n, name="u_star")
    return _lyap_a(variant, u_k, u_km1, v_km1, v_km2, u_star, alpha)


def lyapunov_B(variant, u_kp1, u_k, v_k, v_km1, alpha) -> float:
    """Descent decrement ``B_k`` (identically 0 at the boundary alpha = 1/3).

    standard:
        ``(1-3a) ||u_{k+1} - v_k||^2 + (2/3)(1-3a) ||v_k - v_{k-1}||^2``
    alternative:
        ``(1-3a) ||u_{k+1} - v_k||^2 + (1-3a) ||u_k - v_k||^2
        + a (1-3a) ||v_k - v_{k-1}||^2``
    """
    if variant not in LYAPUNOV_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {LYAPUNOV_VARIANTS}")
    alpha = float(alpha)
    if alpha < 0.0:
        raise ValueError("alpha must be nonnegative")
    u_kp1 = as_point(u_kp1, name="u_kp1")
    n = u_kp1.size
    u_k = as_point(u_k, n, name="u_k")
    v_k = as_point(v_k, n, name="v_k")
    v_km1 = as_point(v_km1, n, name="v_km1")
    return _lyap_b(variant, u_kp1, u_k, v_k, v_km1, alpha)


@dataclass(frozen=True)
class LyapunovRow:
    k: int
    a: float
    b: float
    slack: float  # A_k - B_k - A_{k+1}; descent requires slack >= 0


@dataclass(frozen=True)
class LyapunovTrace:
    """Per-iteration descent quantities along a recorded trajectory."""

    alpha: float
    variant: str
    rows: tuple[LyapunovRow, ...] = field(repr=False)
    violation_count: int = 0
    tolerance: float = 0.0


def attach_lyapunov(trajectory, problem, variant: str = "standard") -> LyapunovTrace:
    """Evaluate the descent pair along a trajectory and count violations.

    Applies only to unconstrained popov/ogda runs with a known reference
    solution.  Rows cover k >= 2 (the first index at which the potential is
    defined) up to the second-to-last iterate (the decrement needs the next
    iterate).  A row violates descent when its slack falls below
    ``-1e-9 * max(1, |A_2|)``.
    """
    if variant not in LYAPUNOV_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {LYAPUNOV_VARIANTS}")
    if trajectory.method not in ("popov", "ogda"):
        raise ValueError(
            "Lyapunov monitoring applies only to popov/ogda trajectories, "
            f"not {trajectory.method!r}"
        )
    if problem.feasible_set.kind != "whole_space":
        raise ValueError(
            "Lyapunov monitoring applies only to unconstrained trajectories"
        )
    if not problem.known_solutions:
        raise ValueError("no reference solution")
    u_star = problem.known_solutions[0]
    scaled = trajectory.stepsize * problem.lipschitz
    alpha = scaled * scaled

    rows = trajectory.rows
    # a diverged run may end in a non-finite row; the quantities stop there
    finite_rows = len(rows)
    for i, row in enumerate(rows):
        if not np.isfinite(row.u).all():
            finite_rows = i
            break
    rows = rows[:finite_rows]
    u = [row.u for row in rows]
    v = []
    for i, row in enumerate(rows):
        if row.v is not None:
            v.append(row.v)
        else:
            # ogda stores the extrapolation point; reconstruct if absent
            v.append(2.0 * u[i] - u[i - 1] if i > 0 else u[0])

    n_rows = len(rows)
    a_vals = {
        k: lyapunov_A(variant, u[k], u[k - 1], v[k - 1], v[k - 2], u_star, alpha)
        for k in range(2, n_rows)
    }
    out = []
    for k in range(2, n_rows - 1):
        b_k = lyapunov_B(variant, u[k + 1], u[k], v[k], v[k - 1], alpha)
        slack = a_vals[k] - b_k - a_vals[k + 1]
        out.append(LyapunovRow(k=k, a=a_vals[k], b=b_k, slack=slack))
    if not out:
        return LyapunovTrace(alpha=alpha, variant=variant, rows=(), violation_count=0,
                             tolerance=0.0)
    tol = 1e-9 * max(1.0, abs(a_vals[2]))
    violations = sum(1 for row in out if row.slack < -tol)
    return LyapunovTrace(
        alpha=alpha,
        variant=variant,
        rows=tuple(out),
        violation_count=violations,
        tolerance=tol,
    )
