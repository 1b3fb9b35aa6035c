"""Uniform 1-D grid and cell-averaged field containers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Grid1D:
    """Uniform mesh of ``n_cells`` cells covering ``(x_min, x_max)``."""

    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self):
        if self.n_cells < 1:
            raise ValueError(f"n_cells must be positive, got {self.n_cells}")
        if not self.x_max > self.x_min:
            raise ValueError(f"empty domain: [{self.x_min}, {self.x_max}]")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    def centers(self) -> np.ndarray:
        """Cell centers x_j = x_min + (j + 1/2) dx."""
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx

    def interfaces(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_cells + 1)


@dataclass
class FieldState:
    """Cell averages of the state vector at one instant.

    ``data`` has shape (n_cells, n) with one row per cell; the first k
    columns are the conserved block, the rest the relaxing block.
    """

    grid: Grid1D
    data: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=float)
        if self.data.ndim != 2 or self.data.shape[0] != self.grid.n_cells:
            raise ValueError(
                f"data shape {self.data.shape} does not match grid with "
                f"{self.grid.n_cells} cells"
            )

    def copy(self) -> "FieldState":
        return FieldState(self.grid, self.data.copy(), self.time)


def neumann_extend(data: np.ndarray, width: int = 1) -> np.ndarray:
    """Copy-extend cell data with ``width`` ghost cells on each side.

    Homogeneous Neumann boundaries: every ghost repeats the nearest
    interior cell.
    """
    if width < 1:
        raise ValueError(f"ghost width must be >= 1, got {width}")
    return np.pad(data, ((width, width), (0, 0)), mode="edge")
