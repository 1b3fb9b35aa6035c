"""Independent reference implementations used only by the test suite.

Everything here is written from the textbook definitions, separately from
the package code paths it validates: brute-force ODE integration for the
source flow, flux-form FORCE / HLL / Rusanov steps for the limit regimes,
the Godunov projection of juxtaposed three-state solvers, and the
general-speed interface source average.
"""

from __future__ import annotations

import numpy as np


def rk4_source(model, w, t, eps, n_sub=10_000):
    """Classical RK4 on dW/dt = R(W)/eps from 0 to t."""
    w = np.asarray(w, dtype=float).copy()
    h = t / n_sub
    for _ in range(n_sub):
        k1 = model.source(w) / eps
        k2 = model.source(w + 0.5 * h * k1) / eps
        k3 = model.source(w + 0.5 * h * k2) / eps
        k4 = model.source(w + h * k3) / eps
        w = w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return w


def fd_gradient(fn, w, h=1e-6):
    """Central-difference gradient of a scalar function of the state."""
    w = np.asarray(w, dtype=float)
    grad = np.empty_like(w)
    for i in range(w.shape[-1]):
        wp = w.copy()
        wm = w.copy()
        wp[i] += h
        wm[i] -= h
        grad[i] = (fn(wp) - fn(wm)) / (2.0 * h)
    return grad


def force_step(ext, dx, dt, flux_fn):
    """Flux-form FORCE step on ghost-extended data: (N+2, ...) -> (N, ...).

    FORCE flux = average of Lax-Friedrichs and Richtmyer two-step
    Lax-Wendroff fluxes.
    """
    f = flux_fn(ext)
    f_lf = 0.5 * (f[:-1] + f[1:]) - (dx / (2.0 * dt)) * (ext[1:] - ext[:-1])
    w_ri = 0.5 * (ext[:-1] + ext[1:]) - (dt / (2.0 * dx)) * (f[1:] - f[:-1])
    f_force = 0.5 * (f_lf + flux_fn(w_ri))
    return ext[1:-1] - (dt / dx) * (f_force[1:] - f_force[:-1])


def hll_step(ext, dx, dt, lam_l, lam_r, flux_fn):
    """Flux-form HLL step on ghost-extended data."""
    f = flux_fn(ext)
    dlam = lam_r - lam_l
    f_hll = (lam_r * f[:-1] - lam_l * f[1:] + lam_r * lam_l * (ext[1:] - ext[:-1])) / dlam
    return ext[1:-1] - (dt / dx) * (f_hll[1:] - f_hll[:-1])


def rusanov_burgers_step(u_ext, dx, dt, speed):
    """Rusanov step for Burgers with a fixed dissipation speed."""
    g = 0.5 * u_ext * u_ext
    f = 0.5 * (g[:-1] + g[1:]) - 0.5 * speed * (u_ext[1:] - u_ext[:-1])
    return u_ext[1:-1] - (dt / dx) * (f[1:] - f[:-1])


def rusanov_burgers_solve(u0, x_min, x_max, n_cells, t_final, cfl=0.45):
    """Fine-mesh Burgers solution by Rusanov with local speeds."""
    dx = (x_max - x_min) / n_cells
    x = x_min + (np.arange(n_cells) + 0.5) * dx
    u = np.asarray(u0(x), dtype=float)
    t = 0.0
    while t < t_final * (1.0 - 1e-14):
        speed = float(np.max(np.abs(u)))
        dt = min(cfl * dx / max(speed, 1e-12), t_final - t)
        ue = np.pad(u, 1, mode="edge")
        g = 0.5 * ue * ue
        alpha = np.maximum(np.abs(ue[:-1]), np.abs(ue[1:]))
        f = 0.5 * (g[:-1] + g[1:]) - 0.5 * alpha * (ue[1:] - ue[:-1])
        u = u - (dt / dx) * (f[1:] - f[:-1])
        t += dt
    return x, u


def riemann_average(w_l, w_r, w_star, lam_l, lam_r, dt, dx):
    """Cell average of the three-state solver over (-dx/2, dx/2) at dt."""
    return (
        0.5 * (w_l + w_r)
        + (dt / dx) * (lam_l * w_l - lam_r * w_r)
        + (dt / dx) * (lam_r - lam_l) * w_star
    )


def relaxed_average(model, w_l, w_r, dt, dx, eps, q_value):
    """Source-corrected average of the exact Riemann solution (the target of
    the solver's consistency condition), written from its closed form.

    Conserved block: mean of states minus the relaxed flux difference.
    Relaxing block: exponential decay of the mean, the epsilon-weighted
    relaxed flux difference, and the source average contribution.
    """
    k = model.k
    rel_l = model.exact_source_solution(w_l, dt, eps)
    rel_r = model.exact_source_solution(w_r, dt, eps)
    decay = np.exp(-dt / eps)
    growth = -np.expm1(-dt / eps)  # 1 - decay, stable for dt << eps
    avg1 = 0.5 * (w_l[:k] + w_r[:k]) - (dt / dx) * (model.flux1(rel_r) - model.flux1(rel_l))
    avg2 = (
        0.5 * (w_l[k:] + w_r[k:]) * decay
        - (eps / dx) * growth * (model.flux2(rel_r) - model.flux2(rel_l))
        + growth * q_value
    )
    return np.concatenate([avg1, avg2])


def intermediate_state_reference(model, w_l, w_r, lam_l, lam_r, dt, dx, eps, q_value):
    """W* solved directly from the consistency identity

        riemann_average(W_l, W_r, W*) == relaxed_average(W_l, W_r),

    independent of the closed-form expression under test.
    """
    target = relaxed_average(model, w_l, w_r, dt, dx, eps, q_value)
    base = 0.5 * (w_l + w_r) + (dt / dx) * (lam_l * w_l - lam_r * w_r)
    return (target - base) / ((dt / dx) * (lam_r - lam_l))


def ars_projection_step(ext, dx, dt, eps, lam_l, lam_r, model):
    """Godunov projection of juxtaposed three-state solvers (test oracle).

    For each cell the two interface intermediate states are built with that
    cell's own source average, computed so the relaxed limit returns the
    equilibrium value of the already-updated conserved block.
    """
    from relaxsolve.schemes.ars import ArsSpeeds, source_closure

    k = model.k
    n = ext.shape[0] - 2
    dlam = lam_r - lam_l

    # conserved block first: projection with the W1 intermediate states
    rel = model.exact_source_solution(ext, dt, eps)
    f1 = model.flux1(rel)
    w1 = ext[:, :k]
    w1_star = (lam_r * w1[1:] - lam_l * w1[:-1] - (f1[1:] - f1[:-1])) / dlam
    w1_new = w1[1:-1] - (dt / dx) * (
        lam_r * (w1[1:-1] - w1_star[:-1]) - lam_l * (w1[1:-1] - w1_star[1:])
    )

    speeds = ArsSpeeds(lam_l, lam_r)
    new = np.empty((n, ext.shape[1]))
    new[:, :k] = w1_new
    for j in range(n):
        e = j + 1  # extended index of cell j
        q_val = source_closure(ext[e - 1], ext[e], ext[e + 1], w1_new[j], speeds, dt, dx, model)
        star_left = intermediate_state_reference(
            model, ext[e - 1], ext[e], lam_l, lam_r, dt, dx, eps, q_val
        )
        star_right = intermediate_state_reference(
            model, ext[e], ext[e + 1], lam_l, lam_r, dt, dx, eps, q_val
        )
        w2 = ext[e, k:]
        new[j, k:] = w2 - (dt / dx) * (
            lam_r * (w2 - star_left[k:]) - lam_l * (w2 - star_right[k:])
        )
    return new


def source_average_general(w_prev, w_cur, w_next, w1_updated, speeds_left, speeds_right,
                           dt, dx, model):
    """Interface source average with per-interface speeds (general form).

    ``speeds_left``/``speeds_right`` are (lam_l, lam_r) pairs for the cell's
    left and right interfaces; collapses to the uniform-speed closure when
    both pairs coincide.
    """
    k = model.k
    ll_m, lr_m = speeds_left   # interface j-1/2
    ll_p, lr_p = speeds_right  # interface j+1/2
    dl_m = lr_m - ll_m
    dl_p = lr_p - ll_p
    w2_prev = np.asarray(w_prev, dtype=float)[k:]
    w2_cur = np.asarray(w_cur, dtype=float)[k:]
    w2_next = np.asarray(w_next, dtype=float)[k:]
    q = model.equilibrium_map(np.asarray(w1_updated, dtype=float))
    denom = ll_p * dl_m - lr_m * dl_p
    bracket = (
        dl_m * dl_p * (-q + w2_cur)
        - (dt / dx) * (
            lr_m * ll_m * dl_p * (w2_prev - w2_cur)
            + ll_p * lr_p * dl_m * (w2_next - w2_cur)
        )
        - lr_m * dl_p * 0.5 * (w2_prev + w2_cur)
        + ll_p * dl_m * 0.5 * (w2_next + w2_cur)
    )
    return bracket / denom
