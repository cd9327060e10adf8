"""Projection-type algorithms for variational inequalities.

Five classic one-step/two-step projection schemes (extragradient, Tseng's
forward-backward-forward, the two-step extrapolation scheme, the reflected
forward-backward scheme, and the unconstrained optimistic-gradient form) with
exact feasible-set projections, stepsize-boundary spectral analysis, Lyapunov
descent monitoring, and a reproducible experiment CLI.
"""

from .analysis import (LyapunovTrace, SpectralReport, attach_lyapunov,
                       build_companion, eg_map_spectral_radius,
                       gelfand_spectral_radius, lyapunov_A, lyapunov_B,
                       one_step_matrix, popov_characteristic_roots)
from .operators import (Affine, Negation, Rotation, ScaledIdentityPlusRotation,
                        evaluate, is_linear, operator_from_params)
from .problem import (AssumptionReport, ProblemInstance, check_monotone,
                      check_nonempty_solution, check_quasar_monotone,
                      distance_to_solution, estimate_lipschitz, is_solution,
                      natural_residual, run_assumption_probes)
from .sets import Ball, Box, Halfspace, Simplex, WholeSpace, project, set_from_params
from .solvers import (ExtragradientSolver, FRBSolver, OGDASolver, PopovSolver,
                      TrajectoryRecord, TrajectoryRow, TsengSolver, eg_step,
                      frb_step, make_solver, ogda_step, popov_step, tseng_step)
from .validation import DimensionMismatchError

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DimensionMismatchError",
    "ProblemInstance",
    "AssumptionReport",
    "natural_residual",
    "distance_to_solution",
    "is_solution",
    "check_quasar_monotone",
    "check_monotone",
    "check_nonempty_solution",
    "estimate_lipschitz",
    "run_assumption_probes",
    "Rotation",
    "Negation",
    "ScaledIdentityPlusRotation",
    "Affine",
    "evaluate",
    "is_linear",
    "operator_from_params",
    "WholeSpace",
    "Halfspace",
    "Box",
    "Ball",
    "Simplex",
    "project",
    "set_from_params",
    "ExtragradientSolver",
    "TsengSolver",
    "PopovSolver",
    "FRBSolver",
    "OGDASolver",
    "make_solver",
    "eg_step",
    "tseng_step",
    "popov_step",
    "frb_step",
    "ogda_step",
    "TrajectoryRecord",
    "TrajectoryRow",
    "SpectralReport",
    "LyapunovTrace",
    "popov_characteristic_roots",
    "eg_map_spectral_radius",
    "build_companion",
    "one_step_matrix",
    "gelfand_spectral_radius",
    "lyapunov_A",
    "lyapunov_B",
    "attach_lyapunov",
]
