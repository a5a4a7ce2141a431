"""Resolved structural context at a point of the normal-cone graph.

Everything downstream of the projection (reduced cones, tangent and
critical cones, directional derivatives, curvature terms, graphical
derivative tests) consumes the same bundle of data: the Moreau pair, the
frame of X = onto_cone + onto_polar, the divided-difference coefficients,
and the index bookkeeping (k0, k1, the alpha/beta/gamma split and its
refinement into singular-value groups).  ConeContext packages it once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cones import (BOUNDARY_POS, BOUNDARY_ZERO, INTERIOR_CONE,
                    INTERIOR_POLAR, ProjectionResult, project_cone)
from .frames import HadamardCoefficients, SvdFrame, hadamard_coeffs
from .points import ConePoint


@dataclass
class ConeContext:
    point: ConePoint              # (t, X)
    proj: ProjectionResult
    frame: SvdFrame
    coeffs: HadamardCoefficients
    k: int
    case: str
    on_boundary: bool             # (t, X) itself on the cone boundary
    theta: float
    ubar: np.ndarray
    sigma_bar: np.ndarray
    k0: int
    k1: int
    groups: list                  # frame.groups (zero group last if present)
    nubar: np.ndarray             # per-group value of sigma_bar
    ugroup: np.ndarray            # per-group value of ubar
    alpha_groups: np.ndarray      # group ids forming {0..k0-1}
    beta_groups: np.ndarray       # group ids forming {k0..k1-1}
    gamma_groups: np.ndarray      # group ids after k1 (boundary_pos only)

    @property
    def m(self) -> int:
        return self.frame.m

    @property
    def n(self) -> int:
        return self.frame.n

    @property
    def interior(self) -> bool:
        return self.case in (INTERIOR_CONE, INTERIOR_POLAR)

    @property
    def j(self) -> int:
        """Residual selection size k - k0."""
        return self.k - self.k0

    @property
    def idx_alpha(self) -> np.ndarray:
        return np.arange(0, self.k0)

    @property
    def idx_beta(self) -> np.ndarray:
        return np.arange(self.k0, self.k1)

    @property
    def idx_gamma(self) -> np.ndarray:
        return np.arange(self.k1, self.m)

    @property
    def onto_cone(self) -> ConePoint:
        return self.proj.onto_cone

    @property
    def onto_polar(self) -> ConePoint:
        return self.proj.onto_polar

    def to_frame(self, Z: np.ndarray) -> np.ndarray:
        return self.frame.to_frame(Z)

    def from_frame(self, Zt: np.ndarray) -> np.ndarray:
        return self.frame.from_frame(Zt)


def _group_value(values: np.ndarray, groups: list) -> np.ndarray:
    return np.array([float(np.mean(values[g])) for g in groups])


def build_context(p: ConePoint) -> ConeContext:
    """Project p and resolve the full structural context."""
    proj = project_cone(p)
    frame = proj.frame
    coeffs = hadamard_coeffs(proj.sigma_bar, frame.sigma, n=frame.n,
                             denom_tol=frame.group_tol)
    groups = frame.groups
    k0, k1 = proj.k0, proj.k1
    starts = np.cumsum([0] + [len(g) for g in groups])
    alpha_ids, beta_ids, gamma_ids = [], [], []
    if proj.case in (BOUNDARY_POS, BOUNDARY_ZERO):
        if k0 not in starts or (proj.case == BOUNDARY_POS and k1 not in starts):
            raise ValueError("projection pattern does not align with the "
                             "singular-value grouping; input too degenerate")
        for gid, g in enumerate(groups):
            if g[0] < k0:
                alpha_ids.append(gid)
            elif proj.case == BOUNDARY_ZERO or g[0] < k1:
                beta_ids.append(gid)
            else:
                gamma_ids.append(gid)
    nubar = _group_value(proj.sigma_bar, groups) if groups else np.zeros(0)
    ugroup = _group_value(proj.ubar, groups) if groups else np.zeros(0)
    return ConeContext(point=p, proj=proj, frame=frame, coeffs=coeffs,
                       k=p.k, case=proj.case, on_boundary=proj.on_boundary,
                       theta=proj.theta, ubar=proj.ubar,
                       sigma_bar=proj.sigma_bar, k0=k0, k1=k1, groups=groups,
                       nubar=nubar, ugroup=ugroup,
                       alpha_groups=np.asarray(alpha_ids, dtype=int),
                       beta_groups=np.asarray(beta_ids, dtype=int),
                       gamma_groups=np.asarray(gamma_ids, dtype=int))


def context_from_pair(onto_cone: ConePoint, onto_polar: ConePoint,
                      tol: float = 1e-8) -> ConeContext:
    """Context at a graph point given as an explicit Moreau pair.

    Validates the pair (memberships and orthogonality are delegated to
    the projection) before resolving: the rebuilt projection of the sum
    must reproduce the supplied cone part within tol.
    """
    p = onto_cone + onto_polar
    ctx = build_context(p)
    resid = (ctx.proj.onto_cone - onto_cone).norm()
    if resid > tol * max(1.0, p.norm()):
        raise ValueError(f"pair is not on the normal-cone graph "
                         f"(projection residual {resid:.3e})")
    return ctx


def graph_residual(onto_cone: ConePoint, onto_polar: ConePoint) -> float:
    """Distance of a candidate pair from the normal-cone graph."""
    p = onto_cone + onto_polar
    proj = project_cone(p)
    return (proj.onto_cone - onto_cone).norm()
