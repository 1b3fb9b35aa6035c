"""Base contract for hyperbolic systems with a stiff relaxation source.

Systems have the split form

    d_t W1 + d_x f1(W) = 0
    d_t W2 + d_x f2(W) = (Q(W1) - W2) / epsilon

with W1 the first k (conserved) components and W2 the remaining n - k
(relaxing) components.  The source is linear in W2, so the pure-source
ODE has the closed-form exponential solution used by all schemes.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np


class RelaxationModel(ABC):
    """One relaxation system: fluxes, equilibrium map, speeds, admissibility.

    All state-valued methods are vectorized over leading axes: ``w`` may be
    a single state of shape (n,) or a batch of shape (m, n).
    """

    #: state dimension and conserved count, k < n
    n: int
    k: int
    #: short identifier used by the CLI
    name: str
    #: primitive-variable names, in CSV column order
    variable_names: tuple[str, ...]
    #: True when grad(f2) . R = 0, i.e. f2 is constant along the source ODE
    flux2_constant_along_source: bool
    #: whether entropy()/entropy_source() are available
    has_entropy: bool = False

    @abstractmethod
    def flux(self, w: np.ndarray) -> np.ndarray:
        """Physical flux f(W), same shape as ``w``."""

    def flux1(self, w: np.ndarray) -> np.ndarray:
        return self.flux(w)[..., : self.k]

    def flux2(self, w: np.ndarray) -> np.ndarray:
        return self.flux(w)[..., self.k :]

    @abstractmethod
    def equilibrium_map(self, w1: np.ndarray) -> np.ndarray:
        """Q(W1): the relaxing block on the equilibrium manifold."""

    def source(self, w: np.ndarray) -> np.ndarray:
        """Relaxation source without the 1/epsilon factor.

        The first k components are identically zero.
        """
        w = np.asarray(w, dtype=float)
        r = np.zeros_like(w)
        r[..., self.k :] = self.equilibrium_map(w[..., : self.k]) - w[..., self.k :]
        return r

    def exact_source_solution(self, w: np.ndarray, t: float, eps: float) -> np.ndarray:
        """Exact flow of dW/dt = R(W)/eps after time ``t``.

        W1 is untouched; W2 decays exponentially onto Q(W1).
        """
        w = np.asarray(w, dtype=float)
        out = w.copy()
        q = self.equilibrium_map(w[..., : self.k])
        out[..., self.k :] = q + (w[..., self.k :] - q) * np.exp(-t / eps)
        return out

    @abstractmethod
    def max_wave_speed(self, data: np.ndarray) -> float:
        """Upper bound on |eigenvalues| over the given cell data."""

    @abstractmethod
    def admissible(self, w: np.ndarray) -> np.ndarray:
        """Vectorized admissibility predicate; (m, n) data -> (m,) bools."""

    def violation(self, w: np.ndarray) -> str:
        """Human-readable reason a single state is inadmissible."""
        return f"state {np.asarray(w)} outside the admissible set"

    # primitive <-> conservative; identity unless a model overrides
    def to_primitive(self, w: np.ndarray) -> np.ndarray:
        return np.asarray(w, dtype=float)

    def from_primitive(self, p: np.ndarray) -> np.ndarray:
        return np.asarray(p, dtype=float)

    def entropy(self, w: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"{self.name} has no entropy pair")

    def entropy_source(self, w: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"{self.name} has no entropy pair")
