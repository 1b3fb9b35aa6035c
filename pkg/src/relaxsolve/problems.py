"""Canonical test problems and named initial conditions.

Builders return cell-averaged initial data for a given model and grid; the
convenience setups bundle the standard parameter choices used throughout
the test suite and the CLI defaults.
"""

from __future__ import annotations

import numpy as np

from .grid import FieldState, Grid1D
from .models import ChaplyginModel, JinXinModel, TwoPhaseModel


def riemann_data(model, grid: Grid1D, left_prim, right_prim, x0: float) -> np.ndarray:
    """Piecewise-constant data from primitive left/right states split at x0."""
    x = grid.centers()
    left = model.from_primitive(np.asarray(left_prim, dtype=float))
    right = model.from_primitive(np.asarray(right_prim, dtype=float))
    return np.where((x < x0)[:, None], left[None, :], right[None, :])


def _require(model, cls, name):
    if not isinstance(model, cls):
        raise ValueError(f"initial condition '{name}' needs a {cls.__name__}")


def jinxin_threestate_data(model, grid: Grid1D) -> np.ndarray:
    """Equilibrium three-state data: u = 0 / -1 / 0.5 with jumps at 0.3, 0.7."""
    _require(model, JinXinModel, "jinxin-3state")
    x = grid.centers()
    u = np.where(x < 0.3, 0.0, np.where(x < 0.7, -1.0, 0.5))
    return np.stack([u, model.g(u)], axis=-1)


def jinxin_twostate_data(model, grid: Grid1D) -> np.ndarray:
    """Equilibrium two-state data: (u, v) = (2, 2) / (-1, 0.5) split at 0."""
    _require(model, JinXinModel, "jinxin-2state")
    x = grid.centers()
    u = np.where(x < 0.0, 2.0, -1.0)
    v = np.where(x < 0.0, 2.0, 0.5)
    return np.stack([u, v], axis=-1)


def burgers_smooth_data(model, grid: Grid1D) -> np.ndarray:
    """Smooth equilibrium data u0(x) = x, v0 = g(u0)."""
    _require(model, JinXinModel, "burgers-smooth")
    u = grid.centers()
    return np.stack([u, model.g(u)], axis=-1)


def chaplygin_shock_data(model, grid: Grid1D) -> np.ndarray:
    _require(model, ChaplyginModel, "chaplygin-shock")
    return riemann_data(model, grid, (1.0, 0.0, 1.0), (0.8, 0.0, 0.8), 0.0)


def twophase_shock_data(model, grid: Grid1D) -> np.ndarray:
    """Phase-transition Riemann data; phi starts on the equilibrium profile."""
    _require(model, TwoPhaseModel, "twophase-shock")
    rho_l, rho_r = 1.0 / 0.92, 1.0 / 1.3
    left = (rho_l, 0.4301, 0.1445, float(model.phi_eq(rho_l)))
    right = (rho_r, 0.3, 0.1, float(model.phi_eq(rho_r)))
    return riemann_data(model, grid, left, right, 0.0)


INITIAL_DATA = {
    "jinxin-3state": jinxin_threestate_data,
    "jinxin-2state": jinxin_twostate_data,
    "burgers-smooth": burgers_smooth_data,
    "chaplygin-shock": chaplygin_shock_data,
    "twophase-shock": twophase_shock_data,
}


# standard setups (model parameters and domains used by the experiments)

def jinxin_threestate(n_cells: int = 500, x_min: float = -3.0, x_max: float = 3.0):
    model = JinXinModel(lam=2.0, bounds=(-1.0, 0.5))
    grid = Grid1D(x_min, x_max, n_cells)
    return model, FieldState(grid, jinxin_threestate_data(model, grid))


def jinxin_twostate(n_cells: int = 500):
    model = JinXinModel(lam=3.0, bounds=(-1.0, 2.0))
    grid = Grid1D(-1.0, 1.0, n_cells)
    return model, FieldState(grid, jinxin_twostate_data(model, grid))


def burgers_smooth(n_cells: int = 500):
    model = JinXinModel(lam=3.0, bounds=(-1.0, 1.0))
    grid = Grid1D(-1.0, 1.0, n_cells)
    return model, FieldState(grid, burgers_smooth_data(model, grid))


def chaplygin_shock(n_cells: int = 1000):
    model = ChaplyginModel(a=1.8, gamma=1.4)
    grid = Grid1D(-0.5, 0.5, n_cells)
    return model, FieldState(grid, chaplygin_shock_data(model, grid))


def twophase_shock(n_cells: int = 500):
    model = TwoPhaseModel(gamma1=1.6, gamma2=1.5)
    grid = Grid1D(-0.5, 0.5, n_cells)
    return model, FieldState(grid, twophase_shock_data(model, grid))
