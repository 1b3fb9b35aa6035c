"""Error norms, exact solutions, reference restriction, and sweeps."""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .driver import SchemeKind, TimeControls, run
from .grid import FieldState, Grid1D


class GridMismatchError(ValueError):
    pass


def _same_grid(a: Grid1D, b: Grid1D) -> bool:
    return a.n_cells == b.n_cells and a.x_min == b.x_min and a.x_max == b.x_max


def l2_error(a: FieldState, b: Union[FieldState, np.ndarray], component: int = 0) -> float:
    """Discrete L2 distance sqrt(sum (a_j - b_j)^2 dx) on one component.

    ``b`` may be a FieldState on the same grid or a plain array of the
    component values (e.g. an exact solution sampled at cell centers).
    """
    av = a.data[:, component]
    if isinstance(b, FieldState):
        if not _same_grid(a.grid, b.grid):
            raise GridMismatchError(f"grids differ: {a.grid} vs {b.grid}")
        bv = b.data[:, component]
    else:
        bv = np.asarray(b, dtype=float)
        if bv.shape != av.shape:
            raise GridMismatchError(f"value array shape {bv.shape} vs grid {av.shape}")
    return float(np.sqrt(np.sum((av - bv) ** 2) * a.grid.dx))


def linf_error(a: FieldState, b: Union[FieldState, np.ndarray], component: int = 0) -> float:
    av = a.data[:, component]
    if isinstance(b, FieldState):
        if not _same_grid(a.grid, b.grid):
            raise GridMismatchError(f"grids differ: {a.grid} vs {b.grid}")
        bv = b.data[:, component]
    else:
        bv = np.asarray(b, dtype=float)
    return float(np.max(np.abs(av - bv)))


def burgers_smooth_exact(t: float, x: np.ndarray) -> np.ndarray:
    """u(t, x) = x / (1 + t); an exact smooth Burgers solution since
    u_t + u u_x = -x/(1+t)^2 + x/(1+t)^2 = 0."""
    return np.asarray(x, dtype=float) / (1.0 + t)


def burgers_riemann_exact(t: float, x: np.ndarray, u_l: float, u_r: float) -> np.ndarray:
    """Entropy solution of Burgers for a single jump at x = 0.

    Shock at speed (u_l + u_r)/2 when u_l > u_r; rarefaction fan x/t
    clipped to [u_l, u_r] when u_l < u_r.
    """
    x = np.asarray(x, dtype=float)
    if t <= 0.0:
        return np.where(x < 0.0, u_l, u_r)
    if u_l > u_r:
        s = 0.5 * (u_l + u_r)
        return np.where(x < s * t, u_l, u_r)
    if u_l == u_r:
        return np.full_like(x, u_l)
    return np.clip(x / t, u_l, u_r)


def burgers_threestate_exact(t: float, x: np.ndarray) -> np.ndarray:
    """Entropy solution for the three-state data 0 / -1 / 0.5 with jumps at
    0.3 and 0.7.

    Left jump: shock of speed -1/2.  Right jump: fan of slopes [-1, 1/2].
    The fan's left edge catches the shock at t = 0.8; afterwards the shock
    between u = 0 and the fan value (x - 0.7)/t follows x_s = 0.7 -
    sqrt(0.8 t) by the jump condition dx_s/dt = (0 + (x_s - 0.7)/t)/2.
    """
    x = np.asarray(x, dtype=float)
    if t <= 0.0:
        return np.where(x < 0.3, 0.0, np.where(x < 0.7, -1.0, 0.5))
    fan = np.clip((x - 0.7) / t, -1.0, 0.5)
    if t <= 0.8:
        shock = 0.3 - 0.5 * t
        middle = np.where(x < 0.7 - t, -1.0, fan)
        return np.where(x < shock, 0.0, middle)
    shock = 0.7 - math.sqrt(0.8 * t)
    return np.where(x < shock, 0.0, fan)


def restrict(values: np.ndarray, factor: int) -> np.ndarray:
    """Average consecutive blocks of ``factor`` fine cells onto a coarse grid."""
    values = np.asarray(values, dtype=float)
    if factor < 1 or values.shape[0] % factor:
        raise ValueError(f"cannot restrict {values.shape[0]} cells by factor {factor}")
    coarse = values.shape[0] // factor
    return values.reshape((coarse, factor) + values.shape[1:]).mean(axis=1)


def restrict_field(fine: FieldState, coarse_grid: Grid1D) -> FieldState:
    """Cell-average a fine-mesh field onto a coarser grid of the same domain."""
    if fine.grid.x_min != coarse_grid.x_min or fine.grid.x_max != coarse_grid.x_max:
        raise GridMismatchError("restriction requires identical domains")
    if fine.grid.n_cells % coarse_grid.n_cells:
        raise GridMismatchError(
            f"{fine.grid.n_cells} cells do not divide onto {coarse_grid.n_cells}"
        )
    factor = fine.grid.n_cells // coarse_grid.n_cells
    return FieldState(coarse_grid, restrict(fine.data, factor), fine.time)


def run_timed(model, ic, controls, eps, observer=None):
    start = time.perf_counter()
    out = run(model, ic, controls, eps, observer)
    return out, time.perf_counter() - start


@dataclass
class SweepRow:
    value: float
    l2: Optional[float] = None
    linf: Optional[float] = None
    runtime_s: Optional[float] = None
    rate: Optional[float] = None
    error: Optional[str] = None


@dataclass
class SweepResult:
    parameter: str
    rows: list[SweepRow] = field(default_factory=list)


@dataclass
class SweepCase:
    """One family of runs: a setup builder plus scheme/time controls.

    ``setup(n_cells)`` returns (model, initial FieldState); ``oracle(eps,
    n_cells)`` returns the reference values of ``component`` on that grid.
    """

    setup: Callable[[int], tuple]
    scheme: SchemeKind
    cfl: float
    t_final: float
    n_cells: int
    oracle: Callable[[float, int], np.ndarray]
    component: int = 0


def exact_oracle(case_setup, t_final: float, fn: Callable):
    """Oracle sampling an exact solution ``fn(t, x)`` at cell centers."""

    def oracle(eps, n_cells):
        _, ic = case_setup(n_cells)
        return fn(t_final, ic.grid.centers())

    return oracle


def splitting_oracle(case_setup, t_final: float, cfl: float, reference_cells: int,
                     component: int = 0):
    """Oracle running the splitting scheme on a fine mesh and restricting."""

    def oracle(eps, n_cells):
        model, ic = case_setup(reference_cells)
        out, _ = run_timed(model, ic, TimeControls(cfl, t_final, SchemeKind.SPLITTING), eps)
        if reference_cells % n_cells:
            raise GridMismatchError(
                f"reference cells {reference_cells} do not divide onto {n_cells}"
            )
        return restrict(out.data[:, component], reference_cells // n_cells)

    return oracle


def _measure(case: SweepCase, eps: float, n_cells: int) -> SweepRow:
    try:
        model, ic = case.setup(n_cells)
        controls = TimeControls(case.cfl, case.t_final, case.scheme)
        out, secs = run_timed(model, ic, controls, eps)
        ref = case.oracle(eps, n_cells)
        return SweepRow(
            value=0.0,
            l2=l2_error(out, ref, case.component),
            linf=linf_error(out, ref, case.component),
            runtime_s=secs,
        )
    except Exception as exc:  # recorded per-row, the sweep itself survives
        return SweepRow(value=0.0, error=f"{type(exc).__name__}: {exc}")


def epsilon_sweep(case: SweepCase, eps_values: Sequence[float], threads: int = 1) -> SweepResult:
    """Error table over relaxation parameters at fixed mesh."""
    values = sorted(float(v) for v in eps_values)
    if threads > 1 and len(values) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda v: _measure(case, v, case.n_cells), values))
    else:
        rows = [_measure(case, v, case.n_cells) for v in values]
    for value, row in zip(values, rows):
        row.value = value
    return SweepResult("eps", rows)


def refinement_sweep(case: SweepCase, eps: float, cell_counts: Sequence[int],
                     threads: int = 1) -> SweepResult:
    """Error table over mesh sizes at fixed epsilon, with observed rates.

    Rows are sorted by decreasing dx; each row's rate compares it with the
    previous (coarser) row: rate = ln(e_prev/e_cur) / ln(dx_prev/dx_cur).
    """
    counts = sorted(int(c) for c in cell_counts)
    if threads > 1 and len(counts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda c: _measure(case, eps, c), counts))
    else:
        rows = [_measure(case, eps, c) for c in counts]
    _, probe = case.setup(1)
    length = probe.grid.x_max - probe.grid.x_min
    for count, row in zip(counts, rows):
        row.value = length / count
    rows = rows[::-1]  # decreasing dx
    for prev, cur in zip(rows, rows[1:]):
        if prev.l2 and cur.l2 and prev.l2 > 0 and cur.l2 > 0:
            cur.rate = math.log(prev.l2 / cur.l2) / math.log(prev.value / cur.value)
    return SweepResult("dx", rows)


def distance_table(labelled_fields, model, reference: FieldState):
    """Per-variable L2/Linf distances of each field to the restricted reference.

    ``labelled_fields`` is {label: FieldState}; ``reference`` is a fine-mesh
    field on the same domain.  Distances are measured on primitive variables
    after cell-averaging the conserved reference onto each coarse grid.
    """
    rows = []
    for label, fld in labelled_fields.items():
        ref = restrict_field(reference, fld.grid)
        prim = model.to_primitive(fld.data)
        prim_ref = model.to_primitive(ref.data)
        for i, var in enumerate(model.variable_names):
            diff = prim[:, i] - prim_ref[:, i]
            rows.append(
                {
                    "label": label,
                    "variable": var,
                    "l2": float(np.sqrt(np.sum(diff**2) * fld.grid.dx)),
                    "linf": float(np.max(np.abs(diff))),
                }
            )
    return rows
