"""Source-aware approximate Riemann solver.

Three-state solver with speeds lam_l < 0 < lam_r whose intermediate state
is fixed by integral consistency with a source-corrected average of the
exact Riemann solution: fluxes are evaluated on source-relaxed states and
the relaxing block carries exponential weights in dt/eps.  The interface
source closure is chosen so that the relaxed limit eps -> 0 of the update
lands exactly on the equilibrium manifold, making the Godunov scheme
asymptotic preserving by construction: it reduces to HLL on the
homogeneous system for eps -> infinity and to HLL (Rusanov for symmetric
speeds) on the equilibrium system for eps -> 0.

The runtime update is the flux form of the Godunov projection under
per-step uniform speeds; the projection itself is kept as a test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..model import RelaxationModel


@dataclass(frozen=True)
class ArsSpeeds:
    """Global solver speeds for one step, lam_l < 0 < lam_r."""

    lam_l: float
    lam_r: float

    def __post_init__(self):
        if not (self.lam_l < 0.0 < self.lam_r):
            raise ValueError(f"need lam_l < 0 < lam_r, got ({self.lam_l}, {self.lam_r})")

    @property
    def spread(self) -> float:
        return self.lam_r - self.lam_l


def intermediate_state(
    w_l: np.ndarray,
    w_r: np.ndarray,
    speeds: ArsSpeeds,
    dt: float,
    dx: float,
    eps: float,
    model: RelaxationModel,
    q_closure: np.ndarray,
) -> np.ndarray:
    """Intermediate state W* of the three-state solver (diagnostic).

    ``q_closure`` is the interface source average, normally produced by
    source_closure() for the cell being updated.
    """
    k = model.k
    w_l = np.asarray(w_l, dtype=float)
    w_r = np.asarray(w_r, dtype=float)
    rel_l = model.exact_source_solution(w_l, dt, eps)
    rel_r = model.exact_source_solution(w_r, dt, eps)
    ll, lr = speeds.lam_l, speeds.lam_r
    dlam = speeds.spread
    em1 = np.expm1(-dt / eps)

    star = np.empty_like(w_l)
    star[..., :k] = (
        lr * w_r[..., :k] - ll * w_l[..., :k] - (model.flux1(rel_r) - model.flux1(rel_l))
    ) / dlam
    star[..., k:] = (
        (dx / (dt * dlam)) * em1 * 0.5 * (w_l[..., k:] + w_r[..., k:])
        + em1 * (eps / (dt * dlam)) * (model.flux2(rel_r) - model.flux2(rel_l))
        - (ll * w_l[..., k:] - lr * w_r[..., k:]) / dlam
        - em1 * (dx / (dt * dlam)) * np.asarray(q_closure, dtype=float)
    )
    return star


def source_closure(
    w_prev: np.ndarray,
    w_cur: np.ndarray,
    w_next: np.ndarray,
    w1_updated: np.ndarray,
    speeds: ArsSpeeds,
    dt: float,
    dx: float,
    model: RelaxationModel,
) -> np.ndarray:
    """Interface source average for the cell ``w_cur``, shared by both of
    its interfaces.

    Defined by requiring the relaxed limit of the update to return exactly
    Q of the already-updated conserved block ``w1_updated``.
    """
    ll, lr = speeds.lam_l, speeds.lam_r
    dlam = lr - ll
    if dlam == 0.0:
        raise ValueError("degenerate solver speeds: lam_r == lam_l")
    k = model.k
    w2_prev = np.asarray(w_prev, dtype=float)[..., k:]
    w2_cur = np.asarray(w_cur, dtype=float)[..., k:]
    w2_next = np.asarray(w_next, dtype=float)[..., k:]
    q = model.equilibrium_map(np.asarray(w1_updated, dtype=float))
    return (
        q
        - w2_cur
        + (lr / dlam) * 0.5 * (w2_prev + w2_cur)
        - (ll / dlam) * 0.5 * (w2_next + w2_cur)
        + (dt / dx) * (lr * ll / dlam) * (w2_prev - 2.0 * w2_cur + w2_next)
    )


def ars_step(
    ext: np.ndarray,
    dx: float,
    dt: float,
    eps: float,
    speeds: ArsSpeeds,
    model: RelaxationModel,
):
    """One step on ghost-extended data: (N+2, n) -> (N, n).

    Stages: (i) relax every cell state along the source for dt; (ii) update
    the conserved block with the HLL-type flux on relaxed states; (iii)
    evaluate Q on the updated conserved block; (iv) update the relaxing
    block with its exponentially weighted flux plus the relaxation
    correction -(e^(-dt/eps) - 1)(Q - W2).  f2 is always evaluated on the
    relaxed states, which also covers models whose f2 varies along the
    source flow.
    """
    k = model.k
    ll, lr = speeds.lam_l, speeds.lam_r
    dlam = speeds.spread

    relaxed = model.exact_source_solution(ext, dt, eps)
    f1 = model.flux1(relaxed)
    f2 = model.flux2(relaxed)
    w1 = ext[:, :k]
    w2 = ext[:, k:]

    flux1 = (lr * ll / dlam) * (w1[1:] - w1[:-1]) - (ll * f1[1:] - lr * f1[:-1]) / dlam
    w1_new = w1[1:-1] - (dt / dx) * (flux1[1:] - flux1[:-1])

    q_new = model.equilibrium_map(w1_new)

    decay = np.exp(-dt / eps)
    em1 = np.expm1(-dt / eps)
    # eps (e^(-dt/eps) - 1) / dt: -> -1 for eps >> dt, -> 0 for eps << dt
    beta = eps * em1 / dt
    flux2 = (decay * lr * ll / dlam) * (w2[1:] - w2[:-1]) + beta * (
        ll * f2[1:] - lr * f2[:-1]
    ) / dlam
    w2_new = w2[1:-1] - (dt / dx) * (flux2[1:] - flux2[:-1]) - em1 * (q_new - w2[1:-1])

    return np.concatenate([w1_new, w2_new], axis=1), flux1[0], flux1[-1]
