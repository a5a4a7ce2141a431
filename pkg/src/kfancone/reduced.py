"""Reduced spaces and cones of the projection's directional derivative.

At a boundary context the derivative calculus happens in a product space
of one scalar and a list of blocks extracted from frame coordinates:

  boundary_pos:  symmetric blocks G(Z_{gg}) for every alpha/beta group g;
  boundary_zero: symmetric blocks G(Z_{gg}) for every nonzero group plus
                 the rectangular corner [Z_bb  Z_bc].

The reduced cone constrains the trace of the alpha blocks plus the top
(k - k0) sum of the beta block spectra (plain sum for boundary_pos,
absolute sum for boundary_zero), with an additional weighted equality
when the base point is off the cone boundary.  Projection onto it is the
spectral re-dress of the shared vector kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .context import ConeContext
from .cones import BOUNDARY_POS, BOUNDARY_ZERO
from .frames import _fix_signs, sym_part
from .topk import project_topk_epigraph, topk_abs, topk_sum


@dataclass
class ReducedPoint:
    zeta: float
    blocks: list          # per-group blocks; boundary_zero: rectangular last
    case: str

    def norm(self) -> float:
        sq = self.zeta ** 2 + sum(float(np.sum(B * B)) for B in self.blocks)
        return float(np.sqrt(sq))


@dataclass
class SpectralVector:
    kappa: np.ndarray     # concatenated per-block spectra, sorted per block
    factors: list         # R per symmetric block; (U, V) for the rectangle
    sizes: list           # spectrum length per block


def _beta_cols(ctx: ConeContext) -> np.ndarray:
    """Column indices of the rectangular corner: b plus the extra columns."""
    return np.concatenate([ctx.frame.b, ctx.frame.c])


def embed_blocks(ctx: ConeContext, Zt: np.ndarray) -> ReducedPoint:
    """Extract the reduced blocks of a matrix in frame coordinates."""
    if ctx.interior:
        raise ValueError("reduced embedding requires a boundary context")
    if Zt.shape != (ctx.m, ctx.n):
        raise ValueError("frame-coordinate matrix of wrong shape")
    blocks = []
    if ctx.case == BOUNDARY_POS:
        for gid in np.concatenate([ctx.alpha_groups, ctx.beta_groups]):
            g = ctx.groups[int(gid)]
            blocks.append(sym_part(Zt[np.ix_(g, g)]))
    else:
        b = ctx.frame.b
        for gid in np.concatenate([ctx.alpha_groups, ctx.beta_groups]):
            g = ctx.groups[int(gid)]
            if len(b) and g[0] == b[0]:
                continue
            blocks.append(sym_part(Zt[np.ix_(g, g)]))
        blocks.append(Zt[np.ix_(b, _beta_cols(ctx))])
    return ReducedPoint(zeta=0.0, blocks=blocks, case=ctx.case)


def spectral_decompose(p: ReducedPoint) -> SpectralVector:
    """Per-block eigen/singular decomposition with nonincreasing spectra."""
    kappa, factors, sizes = [], [], []
    nblocks = len(p.blocks)
    for i, B in enumerate(p.blocks):
        rect = p.case == BOUNDARY_ZERO and i == nblocks - 1
        if rect:
            nb = B.shape[0]
            if nb == 0:
                factors.append((np.zeros((0, 0)), np.zeros(B.shape[::-1])))
                sizes.append(0)
                continue
            U, s, Vh = np.linalg.svd(B, full_matrices=True)
            V = Vh.T
            _fix_signs(U, V, nb)
            kappa.append(s)
            factors.append((U, V))
            sizes.append(nb)
        else:
            lam, R = np.linalg.eigh(B)
            lam, R = lam[::-1].copy(), R[:, ::-1].copy()
            for j in range(R.shape[1]):
                if R[np.argmax(np.abs(R[:, j])), j] < 0:
                    R[:, j] = -R[:, j]
            kappa.append(lam)
            factors.append(R)
            sizes.append(len(lam))
    kap = np.concatenate(kappa) if kappa else np.zeros(0)
    return SpectralVector(kappa=kap, factors=factors, sizes=sizes)


def spectral_redress(p: ReducedPoint, spect: SpectralVector,
                     values: np.ndarray) -> ReducedPoint:
    """Rebuild blocks from new spectra using the stored factors."""
    blocks = []
    off = 0
    nblocks = len(spect.factors)
    for i, F in enumerate(spect.factors):
        sz = spect.sizes[i]
        vals = values[off : off + sz]
        off += sz
        rect = p.case == BOUNDARY_ZERO and i == nblocks - 1
        if rect:
            U, V = F
            nb, nc = p.blocks[i].shape
            S = np.zeros((nb, nc))
            S[:, :nb] = np.diag(vals)
            blocks.append(U @ S @ V.T)
        else:
            blocks.append(F @ np.diag(vals) @ F.T)
    return ReducedPoint(zeta=0.0, blocks=blocks, case=p.case)


def _kappa_split(ctx: ConeContext, spect: SpectralVector):
    kappa = spect.kappa
    return kappa[: ctx.k0], kappa[ctx.k0 :]


def reduced_cone_value(ctx: ConeContext, p: ReducedPoint):
    """(inequality value, equality value) of the reduced cone at p."""
    spect = spectral_decompose(p)
    ka, kb = _kappa_split(ctx, spect)
    tsum = float(ka.sum())
    if ctx.case == BOUNDARY_POS:
        val = tsum + topk_sum(kb, ctx.j)
    else:
        val = tsum + topk_abs(kb, ctx.j)
    eq = tsum + float(np.dot(ctx.ubar[ctx.idx_beta], kb))
    return val, eq


def in_reduced_cone(ctx: ConeContext, p: ReducedPoint, tol: float = 1e-9) -> bool:
    val, eq = reduced_cone_value(ctx, p)
    ok = val <= p.zeta + tol
    if not ctx.on_boundary:
        ok = ok and abs(eq - p.zeta) <= tol
    return bool(ok)


def project_reduced_cone(ctx: ConeContext, p: ReducedPoint) -> ReducedPoint:
    """Exact projection onto the reduced cone (spectral re-dress)."""
    spect = spectral_decompose(p)
    ubar = None if ctx.on_boundary else ctx.ubar[ctx.idx_beta]
    eta, d, _ = project_topk_epigraph(
        p.zeta, spect.kappa, j=ctx.j, n_alpha=ctx.k0,
        absolute=(ctx.case == BOUNDARY_ZERO), ubar_beta=ubar)
    out = spectral_redress(p, spect, d)
    out.zeta = float(eta)
    return out


def in_reduced_polar(ctx: ConeContext, p: ReducedPoint, tol: float = 1e-9) -> bool:
    """Polar membership via the zero-projection criterion."""
    return project_reduced_cone(ctx, p).norm() <= tol


def hadamard_part(ctx: ConeContext, Zt: np.ndarray) -> np.ndarray:
    """Divided-difference part of the derivative in frame coordinates:
    [E1 o G(Z1) + E2 o H(Z1), F o Z2]."""
    m = ctx.m
    Z1 = Zt[:, :m]
    out = np.zeros_like(Zt)
    out[:, :m] = ctx.coeffs.E1 * sym_part(Z1) + ctx.coeffs.E2 * (0.5 * (Z1 - Z1.T))
    out[:, m:] = ctx.coeffs.F * Zt[:, m:]
    return out
