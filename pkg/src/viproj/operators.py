"""Closed catalog of problem operators with exact evaluation and known Lipschitz constants.

The catalog is an enumerated set rather than a callback extension point so
that every operator appearing in a trajectory log or a config file is exactly
reproducible from its kind tag and numeric parameters.
"""

from __future__ import annotations

import numpy as np

from .analysis import gelfand_spectral_radius
from .validation import as_point, as_square_matrix

__all__ = [
    "Rotation",
    "Negation",
    "ScaledIdentityPlusRotation",
    "Affine",
    "OPERATOR_KINDS",
    "evaluate",
    "is_linear",
    "operator_from_params",
]

ROTATION_MATRIX = np.array([[0.0, -1.0], [1.0, 0.0]])


class Rotation:
    """Planar quarter-turn ``(x1, x2) -> (-x2, x1)``.

    Monotone (skew), an isometry, Lipschitz constant 1; its only zero is the
    origin.  The canonical specimen for the stepsize-boundary scenarios.
    """

    kind = "rotation"
    dimension = 2
    lipschitz = 1.0
    is_linear = True

    def __call__(self, u) -> np.ndarray:
        u = as_point(u, 2, name="u")
        return np.array((-u[1], u[0]))

    @property
    def matrix(self) -> np.ndarray:
        return ROTATION_MATRIX.copy()

    def params(self) -> dict:
        return {}

    def __repr__(self):
        return "Rotation()"


class Negation:
    """``F(u) = -u``: a deliberately non-quasar-monotone specimen."""

    kind = "negation"
    lipschitz = 1.0
    is_linear = True

    def __init__(self, dimension: int = 2):
        dimension = int(dimension)
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = dimension

    def __call__(self, u) -> np.ndarray:
        u = as_point(u, self.dimension, name="u")
        return -u

    @property
    def matrix(self) -> np.ndarray:
        return -np.eye(self.dimension)

    def params(self) -> dict:
        return {"dimension": self.dimension}

    def __repr__(self):
        return f"Negation(dimension={self.dimension})"


class ScaledIdentityPlusRotation:
    """``F(u) = eta*u + rotation(u)`` on the plane, eta > 0.

    Strongly monotone with modulus eta; Lipschitz constant sqrt(eta^2 + 1).
    """

    kind = "scaled_identity_plus_rotation"
    dimension = 2
    is_linear = True

    def __init__(self, eta: float):
        eta = float(eta)
        if eta <= 0.0:
            raise ValueError("eta must be positive")
        self.eta = eta

    def __call__(self, u) -> np.ndarray:
        u = as_point(u, 2, name="u")
        return np.array((self.eta * u[0] - u[1], self.eta * u[1] + u[0]))

    @property
    def lipschitz(self) -> float:
        return float(np.hypot(self.eta, 1.0))

    @property
    def matrix(self) -> np.ndarray:
        return self.eta * np.eye(2) + ROTATION_MATRIX

    def params(self) -> dict:
        return {"eta": self.eta}

    def __repr__(self):
        return f"ScaledIdentityPlusRotation(eta={self.eta})"


class Affine:
    """``F(u) = M u + c`` for a square matrix M and offset c.

    The Lipschitz constant is the spectral norm of M; when not supplied it is
    computed as ``sqrt(rho(M^T M))`` with the Gelfand estimator at tolerance
    1e-6, which avoids pulling a general eigensolver into this module.
    """

    kind = "affine"

    def __init__(self, matrix, offset=None, lipschitz: float | None = None):
        self.matrix_values = as_square_matrix(matrix, name="matrix")
        n = self.matrix_values.shape[0]
        if offset is None:
            offset = np.zeros(n)
        self.offset = as_point(offset, n, name="offset")
        if lipschitz is None:
            lipschitz = float(
                np.sqrt(gelfand_spectral_radius(self.matrix_values.T @ self.matrix_values,
                                                tol=1e-6))
            )
        if lipschitz <= 0.0:
            raise ValueError("lipschitz must be positive")
        self.lipschitz = float(lipschitz)

    @property
    def dimension(self) -> int:
        return self.matrix_values.shape[0]

    @property
    def is_linear(self) -> bool:
        return bool(np.all(self.offset == 0.0))

    @property
    def matrix(self) -> np.ndarray:
        return self.matrix_values.copy()

    def __call__(self, u) -> np.ndarray:
        u = as_point(u, self.dimension, name="u")
        return self.matrix_values @ u + self.offset

    def params(self) -> dict:
        return {
            "matrix": self.matrix_values.tolist(),
            "offset": self.offset.tolist(),
            "lipschitz": self.lipschitz,
        }

    def __repr__(self):
        return f"Affine(matrix={self.matrix_values.tolist()}, offset={self.offset.tolist()})"


OPERATOR_KINDS = {
    "rotation": Rotation,
    "negation": Negation,
    "scaled_identity_plus_rotation": ScaledIdentityPlusRotation,
    "affine": Affine,
}


def evaluate(op, u) -> np.ndarray:
    """Evaluate the operator at ``u`` (dimension-checked)."""
    return op(u)


def is_linear(op) -> bool:
    """True when the operator is linear (affine operators only with zero offset)."""
    return bool(op.is_linear)


def operator_from_params(kind: str, params: dict):
    """Instantiate a catalog operator from its kind tag and parameter dict."""
    try:
        cls = OPERATOR_KINDS[kind]
    except KeyError:
        raise ValueError(
            f"unknown operator kind {kind!r}, expected one of {sorted(OPERATOR_KINDS)}"
        ) from None
    return cls(**params)
