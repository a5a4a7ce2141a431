"""Top-k sums and exact projection onto their epigraph-type cones.

The shared kernel of the package: every projection here reduces to

    minimize  0.5*(eta - zeta)^2 + 0.5*||d - kappa||^2
    s.t.      sum(d_alpha) + topj(d_beta) <= eta
              [ sum(d_alpha) + <ubar, d_beta> = eta ]

where d_alpha is the leading block of d, topj is either the sum of the
j largest entries or of the j largest absolute entries, and the bracketed
equality is optional.  The feasible set is a polyhedral cone: an
intersection of half spaces indexed by top-j selections.  Its polar is
generated by the selection normals (plus +/- the equality normal), so the
projection is computed exactly as a nonnegative least-squares problem over
those generators, with columns produced on demand by the top-j selection
oracle.  Lawson-Hanson solves each restricted problem exactly and every
generated column strictly decreases the objective, so the loop is finite.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import nnls


def topk_sum(z: np.ndarray, j: int) -> float:
    """Sum of the j largest entries of z."""
    z = np.asarray(z, dtype=float)
    if not (0 <= j <= z.size):
        raise ValueError("j out of range")
    if j == 0:
        return 0.0
    return float(np.sort(z)[::-1][:j].sum())


def topk_abs(z: np.ndarray, j: int) -> float:
    """Sum of the j largest absolute entries of z (vector Ky Fan j-norm)."""
    z = np.asarray(z, dtype=float)
    if not (0 <= j <= z.size):
        raise ValueError("j out of range")
    if j == 0:
        return 0.0
    return float(np.sort(np.abs(z))[::-1][:j].sum())


def kyfan_norm(x: np.ndarray, k: int) -> float:
    """Vector Ky Fan k-norm: sum of the k largest absolute entries."""
    x = np.asarray(x, dtype=float)
    if not (1 <= k <= x.size):
        raise ValueError("k out of range")
    return topk_abs(x, k)


class EpigraphQpError(RuntimeError):
    """Projection kernel failed to converge; carries the last iterate."""

    def __init__(self, message, eta=None, d=None):
        super().__init__(message)
        self.eta = eta
        self.d = d


def _selection_normal(d, n_alpha, j, absolute):
    """Gradient of the most violated selection constraint at d.

    The constraint family is sum(d_alpha) + <s, d_beta> - eta <= 0 over
    all j-element selections s (signed in the absolute case); the oracle
    returns the top-j value and the normal of the maximizing selection,
    ties broken by index order.
    """
    db = d[n_alpha:]
    if absolute:
        order = np.argsort(-np.abs(db), kind="stable")[:j]
        signs = np.where(db[order] >= 0, 1.0, -1.0)
        val = float(np.abs(db[order]).sum())
    else:
        order = np.argsort(-db, kind="stable")[:j]
        signs = np.ones(j)
        val = float(db[order].sum())
    w = np.zeros(1 + d.size)
    w[0] = -1.0
    w[1 : 1 + n_alpha] = 1.0
    w[1 + n_alpha + order] = signs
    return val, w


def project_topk_epigraph(zeta, kappa, j, n_alpha=0, absolute=False,
                          ubar_beta=None, tol=1e-12, max_iter=200):
    """Exact projection of (zeta, kappa) onto the top-j epigraph cone.

    Returns (eta, d, info); info["mu"] is the aggregate multiplier of the
    inequality, so eta = zeta + mu for the inequality-only variant.
    """
    kappa = np.asarray(kappa, dtype=float)
    nbeta = kappa.size - n_alpha
    if not (1 <= j <= nbeta):
        raise ValueError("j out of range for the beta block")
    v = np.concatenate(([float(zeta)], kappa))
    scale = max(1.0, float(np.linalg.norm(v)))
    feas_tol = tol * scale

    gens: list[np.ndarray] = []
    if ubar_beta is not None:
        ubar_beta = np.asarray(ubar_beta, dtype=float)
        if ubar_beta.size != nbeta:
            raise ValueError("ubar length mismatch")
        ne = np.zeros(1 + kappa.size)
        ne[0] = -1.0
        ne[1 : 1 + n_alpha] = 1.0
        ne[1 + n_alpha :] = ubar_beta
        gens = [ne, -ne]
    n_eq = len(gens)

    x = v.copy()
    mu = 0.0
    for _ in range(max_iter):
        if gens:
            A = np.column_stack(gens)
            xi, _ = nnls(A, v)
            x = v - A @ xi
            mu = float(xi[n_eq:].sum())
        eta, d = x[0], x[1:]
        val, w = _selection_normal(d, n_alpha, j, absolute)
        g = d[:n_alpha].sum() + val - eta
        if g <= feas_tol:
            return float(eta), d, {"mu": mu, "n_generators": len(gens)}
        gens.append(w)

    raise EpigraphQpError("projection kernel did not converge",
                          eta=x[0], d=x[1:])
