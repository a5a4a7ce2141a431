"""Membership and projection for the Ky Fan k-norm matrix cone.

The cone is {(t, X): ||sigma(X)||_(k) <= t}; its negative polar is
{(tau, Y): tau <= 0 and max(sigma_1(Y), ||sigma(Y)||_1 / k) <= -tau},
by the dual-norm description of the k-norm.

Projection is computed spectrally: frame X, project the pair (t, sigma)
onto the vector epigraph cone with the exact kernel, and re-dress with
the frame.  The projected pair always satisfies sigma_bar = sigma -
theta*ubar for a step theta >= 0 and weights ubar that are 1 on a leading
block, nonincreasing in [0, 1] on the block of the k-th projected value,
and 0 afterwards; these structural parameters are recovered and carried
on the result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frames import SvdFrame, svd_frame
from .points import ConePoint
from .topk import kyfan_norm, project_topk_epigraph

INTERIOR_CONE = "interior_cone"
INTERIOR_POLAR = "interior_polar"
BOUNDARY_POS = "boundary_pos"
BOUNDARY_ZERO = "boundary_zero"


@dataclass
class ProjectionResult:
    onto_cone: ConePoint
    onto_polar: ConePoint
    theta: float
    ubar: np.ndarray          # length m
    k0: int
    k1: int                   # meaningful in the boundary_pos case only
    case: str
    on_boundary: bool         # the input itself lies on the cone boundary
    beta_split: tuple         # (beta1, beta2, beta3) index arrays
    frame: SvdFrame           # frame of the input matrix X
    sigma_bar: np.ndarray     # singular values of the projected matrix


def in_cone(p: ConePoint, tol: float = 1e-9) -> bool:
    """Test ||sigma(X)||_(k) <= t + tol."""
    s = np.linalg.svd(p.X, compute_uv=False)
    return kyfan_norm(s, p.k) <= p.t + tol


def in_polar_cone(p: ConePoint, tol: float = 1e-9) -> bool:
    """Test membership in the negative polar via the dual norm."""
    s = np.linalg.svd(p.X, compute_uv=False)
    dual = max(s[0] if s.size else 0.0, float(s.sum()) / p.k)
    return p.t <= tol and dual <= -p.t + tol


def _structural_params(sigma, sigma_bar, theta, k, zero_tol, group_tol):
    """Recover (ubar, k0, k1, case) from a projected spectrum."""
    m = len(sigma)
    if theta > zero_tol:
        ubar = (sigma - sigma_bar) / theta
    else:
        ubar = np.zeros(m)
    ubar = np.clip(ubar, 0.0, 1.0)
    nubar = sigma_bar[k - 1]
    if nubar > zero_tol:
        case = BOUNDARY_POS
        k0 = int(np.sum(sigma_bar > nubar + group_tol))
        k1 = int(np.sum(sigma_bar >= nubar - group_tol))
    else:
        case = BOUNDARY_ZERO
        k0 = int(np.sum(sigma_bar > zero_tol))
        k1 = m
    one = ubar >= 1.0 - group_tol
    zero = ubar <= group_tol
    beta = np.arange(k0, k1)
    beta_split = (beta[one[beta]], beta[~one[beta] & ~zero[beta]], beta[zero[beta]])
    return ubar, k0, k1, case, beta_split


def project_cone(p: ConePoint, tol: float = 1e-12) -> ProjectionResult:
    """Nearest point of the cone, its Moreau complement, and structure."""
    frame = svd_frame(p.X)
    s = frame.sigma
    m, n = p.X.shape
    scale = max(1.0, p.norm())
    bnd_tol = 1e-9 * scale

    eta, d, _ = project_topk_epigraph(p.t, s, j=p.k, n_alpha=0,
                                      absolute=True, tol=tol)
    d = np.maximum(d, 0.0)
    theta = max(eta - p.t, 0.0)

    S = np.zeros((m, n))
    S[:, :m] = np.diag(d)
    Xbar = frame.U @ S @ frame.V.T
    onto = ConePoint(eta, Xbar, p.k)
    polar = p - onto

    zero_tol = max(frame.zero_tol, 1e-12 * scale)
    group_tol = frame.group_tol
    ubar, k0, k1, case, beta_split = _structural_params(
        s, d, theta, p.k, zero_tol, group_tol)

    on_boundary = False
    if theta <= bnd_tol:
        # input in the cone: interior unless the k-norm constraint is tight
        gap = p.t - kyfan_norm(s, p.k)
        if gap > bnd_tol:
            case = INTERIOR_CONE
        else:
            on_boundary = True
    elif np.all(d <= zero_tol) and abs(eta) <= bnd_tol:
        # projection hit the apex: polar side
        dual = max(s[0] if m else 0.0, float(s.sum()) / p.k)
        if dual < -p.t - bnd_tol:
            case = INTERIOR_POLAR
    return ProjectionResult(onto_cone=onto, onto_polar=polar, theta=theta,
                            ubar=ubar, k0=k0, k1=k1, case=case,
                            on_boundary=on_boundary, beta_split=beta_split,
                            frame=frame, sigma_bar=d)


def project_polar_cone(p: ConePoint, tol: float = 1e-12) -> ProjectionResult:
    """Same decomposition; the polar projection is id - project_cone."""
    return project_cone(p, tol=tol)
