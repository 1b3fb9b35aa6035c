"""Splitting reference scheme: explicit HLL convection, implicit source.

Used on fine meshes to generate the reference solutions the two unsplit
schemes are compared against.
"""

from __future__ import annotations

import numpy as np

from ..model import RelaxationModel
from .ars import ArsSpeeds


def hll_flux(w_l: np.ndarray, w_r: np.ndarray, speeds: ArsSpeeds, model: RelaxationModel):
    """Three-state HLL interface flux,

    (lam_r f(W_l) - lam_l f(W_r) + lam_r lam_l (W_r - W_l)) / (lam_r - lam_l).
    """
    ll, lr = speeds.lam_l, speeds.lam_r
    dlam = speeds.spread
    w_l = np.asarray(w_l, dtype=float)
    w_r = np.asarray(w_r, dtype=float)
    return (lr * model.flux(w_l) - ll * model.flux(w_r) + lr * ll * (w_r - w_l)) / dlam


def splitting_step(
    ext: np.ndarray,
    dx: float,
    dt: float,
    eps: float,
    speeds: ArsSpeeds,
    model: RelaxationModel,
):
    """One step on ghost-extended data: (N+2, n) -> (N, n).

    Convective half: conservative HLL update.  Source half: backward Euler,
    closed-form because the source is linear in W2 and the conserved block
    is frozen,

        W2_new = (W2_mid + (dt/eps) Q(W1_new)) / (1 + dt/eps),

    a convex combination of W2_mid and Q(W1_new) for any dt/eps.
    """
    k = model.k
    flux = hll_flux(ext[:-1], ext[1:], speeds, model)
    mid = ext[1:-1] - (dt / dx) * (flux[1:] - flux[:-1])
    c = dt / eps
    q = model.equilibrium_map(mid[:, :k])
    new = mid
    new[:, k:] = (mid[:, k:] + c * q) / (1.0 + c)
    return new, flux[0, :k], flux[-1, :k]
