"""Deterministic ordered SVD frames and the elementary matrix operators.

The frame of an m x n matrix X (m <= n) is a full SVD
X = U [Diag(sigma) 0] V^T with sigma nonincreasing, together with a
tolerance-based grouping of equal singular values.  Index conventions:

  a = indices of positive singular values, b = indices of zero singular
  values (within 1..m), c = {m+1..n} (the extra columns of V).

Groups list the level sets of sigma: the nonzero levels first, then the
zero group (when nonempty) as the trailing group.

The module also provides the symmetric/skew splitting, the divided
difference coefficient matrices built from a pair (sigma_bar, sigma),
the symmetric dilation Z -> [[0, Z], [Z^T, 0]], and its shared
eigenbasis for a frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ZERO_TOL_REL = 1e-9
GROUP_TOL_REL = 1e-8


@dataclass
class SvdFrame:
    U: np.ndarray                 # m x m orthogonal
    V: np.ndarray                 # n x n orthogonal, V = [V1 V2]
    sigma: np.ndarray             # length m, nonincreasing, >= 0
    a: np.ndarray                 # indices with sigma > zero_tol
    b: np.ndarray                 # indices with sigma <= zero_tol
    c: np.ndarray                 # m..n-1 (0-based extra V columns)
    groups: list = field(default_factory=list)   # level sets, zero group last
    nu: np.ndarray = None         # distinct nonzero values, one per nonzero group
    group_tol: float = 0.0
    zero_tol: float = 0.0

    @property
    def m(self) -> int:
        return self.U.shape[0]

    @property
    def n(self) -> int:
        return self.V.shape[0]

    @property
    def r(self) -> int:
        """Number of nonzero singular-value groups."""
        return len(self.nu)

    @property
    def has_zero_group(self) -> bool:
        return len(self.b) > 0

    @property
    def V1(self) -> np.ndarray:
        return self.V[:, : self.m]

    @property
    def V2(self) -> np.ndarray:
        return self.V[:, self.m :]

    def to_frame(self, Z: np.ndarray) -> np.ndarray:
        """Rotate Z into frame coordinates: U^T Z V."""
        return self.U.T @ Z @ self.V

    def from_frame(self, Zt: np.ndarray) -> np.ndarray:
        """Inverse of to_frame."""
        return self.U @ Zt @ self.V.T

    def reconstruct(self) -> np.ndarray:
        m, n = self.m, self.n
        S = np.zeros((m, n))
        S[:, :m] = np.diag(self.sigma)
        return self.U @ S @ self.V.T


def _fix_signs(U: np.ndarray, V: np.ndarray, m: int) -> None:
    """Force the largest-magnitude entry of each left singular vector
    to be nonnegative, flipping the paired right vector; V2 columns get
    the same rule independently."""
    for j in range(m):
        i = int(np.argmax(np.abs(U[:, j])))
        if U[i, j] < 0:
            U[:, j] = -U[:, j]
            V[:, j] = -V[:, j]
    for j in range(m, V.shape[1]):
        i = int(np.argmax(np.abs(V[:, j])))
        if V[i, j] < 0:
            V[:, j] = -V[:, j]


def svd_frame(X: np.ndarray, zero_tol: float = None, group_tol: float = None) -> SvdFrame:
    """Ordered full SVD of X with grouped singular values.

    zero_tol defaults to 1e-9 * sigma_1 (relative), group_tol to
    1e-8 * max(1, sigma_1).  Deterministic for fixed input up to the
    orthonormal-basis freedom inside degenerate groups.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] > X.shape[1]:
        raise ValueError("X must be m x n with m <= n")
    if not np.isfinite(X).all():
        raise ValueError("non-finite entries")
    m, n = X.shape
    U, s, Vh = np.linalg.svd(X, full_matrices=True)
    V = Vh.T
    _fix_signs(U, V, m)
    s = np.maximum(s, 0.0)
    s1 = s[0] if m else 0.0
    if zero_tol is None:
        zero_tol = ZERO_TOL_REL * s1
    if group_tol is None:
        group_tol = GROUP_TOL_REL * max(1.0, s1)

    b = np.flatnonzero(s <= zero_tol)
    a = np.flatnonzero(s > zero_tol)
    c = np.arange(m, n)

    groups = []
    nu = []
    start = 0
    for i in range(1, len(a) + 1):
        if i == len(a) or s[a[start]] - s[a[i]] > group_tol:
            grp = a[start:i]
            groups.append(grp.copy())
            nu.append(float(np.mean(s[grp])))
            start = i
    if len(b):
        groups.append(b.copy())
    return SvdFrame(U=U, V=V, sigma=s, a=a, b=b, c=c, groups=groups,
                    nu=np.asarray(nu), group_tol=group_tol, zero_tol=zero_tol)


def sym_part(Z: np.ndarray) -> np.ndarray:
    Z = np.asarray(Z, dtype=float)
    if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
        raise ValueError("square matrix required")
    return 0.5 * (Z + Z.T)


def skew_part(Z: np.ndarray) -> np.ndarray:
    Z = np.asarray(Z, dtype=float)
    if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
        raise ValueError("square matrix required")
    return 0.5 * (Z - Z.T)


@dataclass
class HadamardCoefficients:
    """Divided-difference coefficient matrices of a Moreau pair.

    E1[i,j] = (sb_i - sb_j)/(s_i - s_j) on the symmetric part,
    E2[i,j] = (sb_i + sb_j)/(s_i + s_j) on the skew part,
    F[i,j]  = sb_i / s_i on the extra columns,
    each set to exactly 0 where the denominator vanishes.
    """

    E1: np.ndarray   # m x m
    E2: np.ndarray   # m x m
    F: np.ndarray    # m x (n - m)


def hadamard_coeffs(sigma_bar: np.ndarray, sigma: np.ndarray, n: int = None,
                    denom_tol: float = None) -> HadamardCoefficients:
    sb = np.asarray(sigma_bar, dtype=float)
    s = np.asarray(sigma, dtype=float)
    if sb.shape != s.shape or sb.ndim != 1:
        raise ValueError("sigma_bar and sigma must be equal-length vectors")
    m = len(s)
    if n is None:
        n = m
    if denom_tol is None:
        denom_tol = GROUP_TOL_REL * max(1.0, s[0] if m else 0.0)

    d1 = s[:, None] - s[None, :]
    n1 = sb[:, None] - sb[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        E1 = np.where(np.abs(d1) > denom_tol, n1 / np.where(d1 == 0, 1.0, d1), 0.0)
    d2 = s[:, None] + s[None, :]
    n2 = sb[:, None] + sb[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        E2 = np.where(np.abs(d2) > denom_tol, n2 / np.where(d2 == 0, 1.0, d2), 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        fcol = np.where(np.abs(s) > denom_tol, sb / np.where(s == 0, 1.0, s), 0.0)
    F = np.repeat(fcol[:, None], n - m, axis=1)
    E1 = 0.5 * (E1 + E1.T)
    E2 = 0.5 * (E2 + E2.T)
    return HadamardCoefficients(E1=E1, E2=E2, F=F)


def dilation(Z: np.ndarray) -> np.ndarray:
    """Symmetric dilation [[0, Z], [Z^T, 0]] of an m x n matrix."""
    Z = np.asarray(Z, dtype=float)
    m, n = Z.shape
    B = np.zeros((m + n, m + n))
    B[:m, m:] = Z
    B[m:, :m] = Z.T
    return B


def dilation_eigenbasis(frame: SvdFrame) -> np.ndarray:
    """Orthogonal P diagonalizing the dilation of the framed matrix.

    Columns are ordered so that P^T dilation(X) P = Diag(sigma_a, 0_b,
    0_{n-m}, -0_b, -reversed(sigma_a)); the trailing blocks use the
    column-reversed copies of the a-columns.
    """
    m, n = frame.m, frame.n
    U, V1, V2 = frame.U, frame.V1, frame.V2
    a, b = frame.a, frame.b
    na, nb = len(a), len(b)
    P = np.zeros((m + n, m + n))
    s2 = 1.0 / np.sqrt(2.0)
    col = 0
    P[:m, col:col + na] = s2 * U[:, a]
    P[m:, col:col + na] = s2 * V1[:, a]
    col += na
    P[:m, col:col + nb] = s2 * U[:, b]
    P[m:, col:col + nb] = s2 * V1[:, b]
    col += nb
    P[m:, col:col + (n - m)] = V2
    col += n - m
    P[:m, col:col + nb] = s2 * U[:, b]
    P[m:, col:col + nb] = -s2 * V1[:, b]
    col += nb
    arev = a[::-1]
    P[:m, col:col + na] = s2 * U[:, arev]
    P[m:, col:col + na] = -s2 * V1[:, arev]
    return P


def dilation_eigenvalues(sigma: np.ndarray, a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Eigenvalues of the dilation in the eigenbasis column order."""
    sa = sigma[a]
    sb = sigma[b]
    return np.concatenate([sa, sb, np.zeros(n - len(sigma)), -sb, -sa[::-1]])
