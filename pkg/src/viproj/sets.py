"""Feasible-set catalog with exact Euclidean projections.

Each set is a stateless transformer: ``project`` maps a single point to its
nearest feasible point, ``transform`` applies the projection row-wise, and
``fit`` is a no-op kept for pipeline compatibility.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .validation import as_point

__all__ = [
    "WholeSpace",
    "Halfspace",
    "Box",
    "Ball",
    "Simplex",
    "SET_KINDS",
    "project",
    "set_from_params",
]


class _ProjectionSet(BaseEstimator, TransformerMixin):
    """Shared transformer plumbing for the concrete set kinds."""

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            return self.project(X)
        if X.ndim != 2:
            raise ValueError(f"expected a 2-D sample array, got shape {X.shape}")
        return np.stack([self.project(row) for row in X])

    def project(self, x) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def contains(self, x, tol: float = 1e-12) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError


class WholeSpace(_ProjectionSet):
    """The unconstrained set: projection is the identity."""

    kind = "whole_space"

    def __init__(self, dimension: int):
        self.dimension = int(dimension)
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")

    def project(self, x) -> np.ndarray:
        return as_point(x, self.dimension, name="x")

    def _project_raw(self, x: np.ndarray) -> np.ndarray:
        return x

    def contains(self, x, tol: float = 1e-12) -> bool:
        as_point(x, self.dimension, name="x")
        return True

    def params(self) -> dict:
        return {"dimension": self.dimension}


class Halfspace(_ProjectionSet):
    """``{x : <normal, x> >= offset}`` with a nonzero normal.

    Closed-form projection: ``x + max(0, offset - <normal, x>) / ||normal||^2 * normal``.
    The >= convention means the axis-aligned set {x1 >= 0} is
    ``Halfspace([1, 0], 0)``.
    """

    kind = "halfspace"

    def __init__(self, normal, offset: float = 0.0):
        self.normal = as_point(normal, name="normal")
        if not np.any(self.normal != 0.0):
            raise ValueError("halfspace normal must be nonzero")
        self.offset = float(offset)
        self._norm_sq = float(np.dot(self.normal, self.normal))

    @property
    def dimension(self) -> int:
        return self.normal.size

    def project(self, x) -> np.ndarray:
        return self._project_raw(as_point(x, self.dimension, name="x"))

    def _project_raw(self, x: np.ndarray) -> np.ndarray:
        shortfall = self.offset - float(np.dot(self.normal, x))
        if shortfall <= 0.0:
            return x
        return x + (shortfall / self._norm_sq) * self.normal

    def contains(self, x, tol: float = 1e-12) -> bool:
        x = as_point(x, self.dimension, name="x")
        return float(np.dot(self.normal, x)) >= self.offset - tol

    def params(self) -> dict:
        return {"normal": self.normal.tolist(), "offset": self.offset}


class Box(_ProjectionSet):
    """Componentwise bounds ``lower <= x <= upper``; entries may be +/-inf.

    Infinite entries let axis-aligned halfspaces be written as boxes; both
    representations project identically.
    """

    kind = "box"

    def __init__(self, lower, upper):
        lower = np.asarray(lower, dtype=np.float64)
        upper = np.asarray(upper, dtype=np.float64)
        if lower.ndim != 1 or upper.ndim != 1 or lower.size != upper.size:
            raise ValueError("box bounds must be 1-D vectors of equal dimension")
        if np.isnan(lower).any() or np.isnan(upper).any():
            raise ValueError("box bounds must not contain NaN")
        if not np.all(lower <= upper):
            raise ValueError("box requires lower <= upper componentwise")
        self.lower = lower
        self.upper = upper

    @property
    def dimension(self) -> int:
        return self.lower.size

    def project(self, x) -> np.ndarray:
        return self._project_raw(as_point(x, self.dimension, name="x"))

    def _project_raw(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)

    def contains(self, x, tol: float = 1e-12) -> bool:
        x = as_point(x, self.dimension, name="x")
        return bool(np.all(x >= self.lower - tol) and np.all(x <= self.upper + tol))

    def params(self) -> dict:
        return {"lower": self.lower.tolist(), "upper": self.upper.tolist()}


class Ball(_ProjectionSet):
    """Euclidean ball; projection rescales radially onto the surface."""

    kind = "ball"

    def __init__(self, center, radius: float):
        self.center = as_point(center, name="center")
        self.radius = float(radius)
        if self.radius <= 0.0:
            raise ValueError("ball radius must be positive")

    @property
    def dimension(self) -> int:
        return self.center.size

    def project(self, x) -> np.ndarray:
        return self._project_raw(as_point(x, self.dimension, name="x"))

    def _project_raw(self, x: np.ndarray) -> np.ndarray:
        d = x - self.center
        dist = float(np.linalg.norm(d))
        if dist <= self.radius:
            return x
        return self.center + (self.radius / dist) * d

    def contains(self, x, tol: float = 1e-12) -> bool:
        x = as_point(x, self.dimension, name="x")
        return float(np.linalg.norm(x - self.center)) <= self.radius + tol

    def params(self) -> dict:
        return {"center": self.center.tolist(), "radius": self.radius}


class Simplex(_ProjectionSet):
    """Scaled probability simplex ``{x >= 0, sum(x) = scale}``.

    Projection by the sort-based threshold rule, O(n log n); sorting ties do
    not affect the output, so no tie-breaking is needed.
    """

    kind = "simplex"

    def __init__(self, dimension: int, scale: float = 1.0):
        self.dimension = int(dimension)
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.scale = float(scale)
        if self.scale <= 0.0:
            raise ValueError("simplex scale must be positive")

    def project(self, x) -> np.ndarray:
        return self._project_raw(as_point(x, self.dimension, name="x"))

    def _project_raw(self, x: np.ndarray) -> np.ndarray:
        u = np.sort(x)[::-1]
        cumulative = np.cumsum(u) - self.scale
        counts = np.arange(1, x.size + 1)
        # largest count with positive component after uniform shift; always
        # nonempty because u[0] - (u[0] - scale) = scale > 0
        rho = int(counts[u - cumulative / counts > 0.0][-1])
        tau = cumulative[rho - 1] / rho
        return np.maximum(x - tau, 0.0)

    def contains(self, x, tol: float = 1e-12) -> bool:
        x = as_point(x, self.dimension, name="x")
        return bool(np.all(x >= -tol) and abs(float(np.sum(x)) - self.scale) <= tol)

    def params(self) -> dict:
        return {"dimension": self.dimension, "scale": self.scale}


SET_KINDS = {
    "whole_space": WholeSpace,
    "halfspace": Halfspace,
    "box": Box,
    "ball": Ball,
    "simplex": Simplex,
}


def project(feasible_set, x) -> np.ndarray:
    """Euclidean projection of ``x`` onto the set."""
    return feasible_set.project(x)


def set_from_params(kind: str, params: dict):
    """Instantiate a catalog set from its kind tag and parameter dict."""
    try:
        cls = SET_KINDS[kind]
    except KeyError:
        raise ValueError(
            f"unknown set kind {kind!r}, expected one of {sorted(SET_KINDS)}"
        ) from None
    return cls(**params)
