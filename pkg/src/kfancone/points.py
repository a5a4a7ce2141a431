"""Points of the ambient space R x R^{m x n} used throughout the package.

A cone point is a pair (t, X) with t a scalar and X a real m x n matrix,
m <= n, together with the norm parameter k of the Ky Fan k-norm cone it
lives against.  All arithmetic is Euclidean on the product space with the
trace inner product on the matrix part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ConePoint:
    """A point (t, X) in R x R^{m x n} with the cone parameter k."""

    t: float
    X: np.ndarray
    k: int

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "t", float(self.t))
        if X.ndim != 2:
            raise ValueError("X must be a matrix")
        m, n = X.shape
        if m > n:
            raise ValueError(f"require m <= n, got {X.shape}")
        if not (1 <= self.k <= m):
            raise ValueError(f"k={self.k} out of range [1, {m}]")
        if not np.isfinite(X).all() or not np.isfinite(self.t):
            raise ValueError("non-finite entries in cone point")

    @property
    def shape(self):
        return self.X.shape

    def _check_compatible(self, other: "ConePoint"):
        if self.shape != other.shape or self.k != other.k:
            raise ValueError("incompatible cone points")

    def __add__(self, other: "ConePoint") -> "ConePoint":
        self._check_compatible(other)
        return ConePoint(self.t + other.t, self.X + other.X, self.k)

    def __sub__(self, other: "ConePoint") -> "ConePoint":
        self._check_compatible(other)
        return ConePoint(self.t - other.t, self.X - other.X, self.k)

    def __neg__(self) -> "ConePoint":
        return ConePoint(-self.t, -self.X, self.k)

    def scale(self, s: float) -> "ConePoint":
        return ConePoint(s * self.t, s * self.X, self.k)

    def inner(self, other: "ConePoint") -> float:
        self._check_compatible(other)
        return float(self.t * other.t + np.sum(self.X * other.X))

    def norm(self) -> float:
        return float(np.sqrt(self.t * self.t + np.sum(self.X * self.X)))

    def copy(self) -> "ConePoint":
        return ConePoint(self.t, self.X.copy(), self.k)

    @staticmethod
    def zero(m: int, n: int, k: int) -> "ConePoint":
        return ConePoint(0.0, np.zeros((m, n)), k)

    def to_vector(self) -> np.ndarray:
        """Flatten to a vector (t first, then X row-major)."""
        return np.concatenate(([self.t], self.X.ravel()))

    @staticmethod
    def from_vector(v: np.ndarray, m: int, n: int, k: int) -> "ConePoint":
        v = np.asarray(v, dtype=float)
        if v.size != 1 + m * n:
            raise ValueError("vector length mismatch")
        return ConePoint(v[0], v[1:].reshape(m, n), k)
