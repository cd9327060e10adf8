"""Input validation helpers shared by every module of the package."""

from __future__ import annotations

import numpy as np

__all__ = [
    "DimensionMismatchError",
    "as_point",
    "as_square_matrix",
    "check_stepsize",
]


class DimensionMismatchError(ValueError):
    """Two coordinate objects disagree on dimension.

    Carries both dimensions so callers can report or branch on them.
    """

    def __init__(self, expected: int, actual: int, context: str = "point"):
        self.expected = int(expected)
        self.actual = int(actual)
        self.context = context
        super().__init__(
            f"{context} has dimension {self.actual}, expected {self.expected}"
        )


def as_point(x, dim: int | None = None, name: str = "point") -> np.ndarray:
    """Coerce ``x`` to a finite 1-D float64 vector, optionally of dimension ``dim``."""
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError(f"{name} must be a 1-D coordinate vector, got shape {a.shape}")
    if a.size < 1:
        raise ValueError(f"{name} must have dimension >= 1")
    if dim is not None and a.size != dim:
        raise DimensionMismatchError(dim, a.size, context=name)
    if not np.isfinite(a).all():
        raise ValueError(f"{name} contains non-finite entries: {a!r}")
    return a


def as_square_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a finite square 2-D float64 array."""
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError(f"{name} contains non-finite entries")
    return a


def check_stepsize(lam) -> float:
    lam = float(lam)
    if not np.isfinite(lam) or lam <= 0.0:
        raise ValueError(f"stepsize must be a positive real, got {lam}")
    return lam
