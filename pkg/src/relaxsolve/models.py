"""The three concrete relaxation systems.

* Jin-Xin relaxation of a scalar conservation law (Burgers by default),
* Chaplygin gas (Suliciu-type relaxation of the p-system),
* homogeneous two-phase flow with mass transfer (Euler + mass fraction).
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .model import RelaxationModel


def burgers_flux(u):
    return 0.5 * u * u


def burgers_flux_derivative(u):
    return u


class JinXinModel(RelaxationModel):
    """Jin-Xin relaxation of d_t u + d_x g(u) = 0.

    State W = (u, v), flux f = (v, lam^2 u), equilibrium v = g(u).  The
    admissible set is the invariant region

        D = {(u, v) : u + v/lam in h_+(K), u - v/lam in h_-(K)}

    built from the interval K = [u_min, u_max] through the monotone maps
    h_pm(u) = u +- g(u)/lam.  Requires the subcharacteristic condition
    lam > max_K |g'|.
    """

    n = 2
    k = 1
    name = "jinxin"
    variable_names = ("u", "v")
    flux2_constant_along_source = True

    # slack on the invariant-region membership test; the schemes preserve
    # the region only up to round-off accumulation
    admissible_atol = 1e-7

    def __init__(
        self,
        lam: float,
        bounds: tuple[float, float] = (-1.0, 1.0),
        g: Callable = burgers_flux,
        g_prime: Callable = burgers_flux_derivative,
    ):
        if lam <= 0:
            raise ValueError(f"wave speed must be positive, got {lam}")
        u_min, u_max = bounds
        if not u_max > u_min:
            raise ValueError(f"empty bounds {bounds}")
        sample = np.linspace(u_min, u_max, 10001)
        g_prime_max = float(np.max(np.abs(g_prime(sample))))
        if not lam > g_prime_max:
            raise ValueError(
                f"subcharacteristic condition violated: lam={lam} <= "
                f"max|g'|={g_prime_max} on [{u_min}, {u_max}]"
            )
        self.lam = float(lam)
        self.bounds = (float(u_min), float(u_max))
        self.g = g
        self.g_prime = g_prime
        # h_pm are strictly monotone under the subcharacteristic condition,
        # so the images of K are the intervals between the endpoint values
        self.k_plus = (self.h_plus(u_min), self.h_plus(u_max))
        self.k_minus = (self.h_minus(u_min), self.h_minus(u_max))

    def h_plus(self, u):
        return u + self.g(u) / self.lam

    def h_minus(self, u):
        return u - self.g(u) / self.lam

    def flux(self, w):
        w = np.asarray(w, dtype=float)
        f = np.empty_like(w)
        f[..., 0] = w[..., 1]
        f[..., 1] = self.lam**2 * w[..., 0]
        return f

    def equilibrium_map(self, w1):
        return self.g(np.asarray(w1, dtype=float))

    def max_wave_speed(self, data):
        return self.lam

    def characteristic_pair(self, w):
        """Riemann-like variables (u + v/lam, u - v/lam)."""
        w = np.asarray(w, dtype=float)
        r = w[..., 0] + w[..., 1] / self.lam
        s = w[..., 0] - w[..., 1] / self.lam
        return r, s

    def admissible(self, w):
        w = np.asarray(w, dtype=float)
        r, s = self.characteristic_pair(w)
        tol = self.admissible_atol
        ok_r = (r >= self.k_plus[0] - tol) & (r <= self.k_plus[1] + tol)
        ok_s = (s >= self.k_minus[0] - tol) & (s <= self.k_minus[1] + tol)
        return ok_r & ok_s & np.all(np.isfinite(w), axis=-1)

    def violation(self, w):
        r, s = self.characteristic_pair(np.asarray(w, dtype=float))
        return (
            f"(u,v)={tuple(np.asarray(w))}: u+v/lam={r:.6g} must lie in "
            f"[{self.k_plus[0]:.6g}, {self.k_plus[1]:.6g}], u-v/lam={s:.6g} in "
            f"[{self.k_minus[0]:.6g}, {self.k_minus[1]:.6g}]"
        )


class ChaplyginModel(RelaxationModel):
    """Suliciu-type relaxation of the p-system with p(T) = T^(-gamma).

    State W = (tau, u, T):

        d_t tau - d_x u = 0
        d_t u + d_x (p(T) + a^2 (T - tau)) = 0
        d_t T = (tau - T) / eps

    Eigenvalues are {-a, 0, a}.  The entropy implemented here is the
    convex, source-dissipative one,

        H = u^2/2 - T^(1-gamma)/(1-gamma) + a^2 (tau^2 - T^2)/2
            - (T^(-gamma) + a^2 T)(tau - T),

    whose source production is grad(H).R = -(a^2 - gamma T^(-gamma-1))
    (tau - T)^2 <= 0 under the subcharacteristic condition
    a^2 > gamma T^(-gamma-1).
    """

    n = 3
    k = 2
    name = "chaplygin"
    variable_names = ("tau", "u", "T")
    flux2_constant_along_source = True
    has_entropy = True

    def __init__(self, a: float, gamma: float):
        if a <= 0:
            raise ValueError(f"relaxation speed must be positive, got {a}")
        if gamma <= 1:
            raise ValueError(f"gamma must exceed 1, got {gamma}")
        self.a = float(a)
        self.gamma = float(gamma)

    def pressure(self, T):
        return np.asarray(T, dtype=float) ** (-self.gamma)

    def flux(self, w):
        w = np.asarray(w, dtype=float)
        tau, u, T = w[..., 0], w[..., 1], w[..., 2]
        f = np.empty_like(w)
        f[..., 0] = -u
        f[..., 1] = self.pressure(T) + self.a**2 * (T - tau)
        f[..., 2] = 0.0
        return f

    def equilibrium_map(self, w1):
        # equilibrium T equals the covolume tau
        return np.asarray(w1, dtype=float)[..., :1]

    def max_wave_speed(self, data):
        return self.a

    def admissible(self, w):
        w = np.asarray(w, dtype=float)
        return (w[..., 0] > 0) & (w[..., 2] > 0) & np.all(np.isfinite(w), axis=-1)

    def violation(self, w):
        w = np.asarray(w, dtype=float)
        return f"(tau,u,T)={tuple(w)}: tau and T must stay positive"

    def entropy(self, w):
        w = np.asarray(w, dtype=float)
        tau, u, T = w[..., 0], w[..., 1], w[..., 2]
        g = self.gamma
        return (
            0.5 * u * u
            - T ** (1.0 - g) / (1.0 - g)
            + 0.5 * self.a**2 * (tau * tau - T * T)
            - (T ** (-g) + self.a**2 * T) * (tau - T)
        )

    def entropy_source(self, w):
        """grad(H) . R, with R = (0, 0, tau - T)."""
        w = np.asarray(w, dtype=float)
        tau, T = w[..., 0], w[..., 2]
        kappa = self.a**2 - self.gamma * T ** (-self.gamma - 1.0)
        return -kappa * (tau - T) ** 2

    def subcharacteristic_margin(self, w):
        """a^2 - gamma T^(-gamma-1); positive where dissipativity holds."""
        T = np.asarray(w, dtype=float)[..., 2]
        return self.a**2 - self.gamma * T ** (-self.gamma - 1.0)


class TwoPhaseModel(RelaxationModel):
    """Homogeneous two-phase flow with mass transfer between perfect gases.

    Conservative state W = (rho, rho u, rho E, rho phi); the mass fraction
    phi relaxes toward phi_eq(rho), the piecewise-linear-in-tau saturation
    profile between the two saturation densities rho1_star < rho2_star.
    Mixture pressure p = (gamma(phi) - 1) rho e, gamma(phi) = gamma1 phi +
    gamma2 (1 - phi).
    """

    n = 4
    k = 3
    name = "twophase"
    variable_names = ("rho", "u", "p", "phi")
    flux2_constant_along_source = False

    # phi may step outside [0, 1] by round-off-scale amounts in the weak
    # relaxation regime; see the AP correction term of the Riemann scheme
    phi_atol = 1e-6

    def __init__(self, gamma1: float, gamma2: float):
        if gamma1 <= 1 or gamma2 <= 1:
            raise ValueError(f"gas exponents must exceed 1, got {gamma1}, {gamma2}")
        if gamma1 == gamma2:
            raise ValueError("saturation densities need gamma1 != gamma2")
        self.gamma1 = float(gamma1)
        self.gamma2 = float(gamma2)
        ratio = (gamma2 - 1.0) / (gamma1 - 1.0)
        self.rho1_star = math.exp(-1.0) * ratio ** (gamma2 / (gamma2 - gamma1))
        self.rho2_star = math.exp(-1.0) * ratio ** (gamma1 / (gamma2 - gamma1))
        if not self.rho1_star < self.rho2_star:
            raise ValueError(
                f"saturation densities out of order: rho1*={self.rho1_star}, "
                f"rho2*={self.rho2_star} (need gamma1 > gamma2)"
            )
        self.tau1_star = 1.0 / self.rho1_star
        self.tau2_star = 1.0 / self.rho2_star

    def mixture_gamma(self, phi):
        return self.gamma1 * phi + self.gamma2 * (1.0 - phi)

    def phi_eq(self, rho):
        """Equilibrium mass fraction: 1 below rho1*, 0 above rho2*, linear
        in 1/rho between."""
        rho = np.asarray(rho, dtype=float)
        if np.any(rho <= 0):
            raise ValueError("phi_eq requires positive density")
        lin = (1.0 / rho - self.tau2_star) / (self.tau1_star - self.tau2_star)
        return np.clip(lin, 0.0, 1.0)

    def equilibrium_pressure(self, rho, e):
        """Pressure of the relaxed model, p(rho, e, phi_eq(rho))."""
        rho = np.asarray(rho, dtype=float)
        e = np.asarray(e, dtype=float)
        if np.any(rho <= 0) or np.any(e <= 0):
            raise ValueError("equilibrium_pressure requires rho > 0 and e > 0")
        low = (self.gamma1 - 1.0) * rho * e
        mid = (self.gamma1 - 1.0) * self.rho1_star * e
        high = (self.gamma2 - 1.0) * rho * e
        return np.where(rho <= self.rho1_star, low, np.where(rho >= self.rho2_star, high, mid))

    def _decompose(self, w):
        w = np.asarray(w, dtype=float)
        rho = w[..., 0]
        u = w[..., 1] / rho
        E = w[..., 2] / rho
        phi = w[..., 3] / rho
        e = E - 0.5 * u * u
        p = (self.mixture_gamma(phi) - 1.0) * rho * e
        return rho, u, e, p, phi

    def flux(self, w):
        w = np.asarray(w, dtype=float)
        rho, u, e, p, phi = self._decompose(w)
        f = np.empty_like(w)
        f[..., 0] = w[..., 1]
        f[..., 1] = w[..., 1] * u + p
        f[..., 2] = (w[..., 2] + p) * u
        f[..., 3] = w[..., 3] * u
        return f

    def equilibrium_map(self, w1):
        rho = np.asarray(w1, dtype=float)[..., 0]
        return (rho * self.phi_eq(rho))[..., None]

    def max_wave_speed(self, data):
        rho, u, e, p, phi = self._decompose(data)
        c = np.sqrt(self.mixture_gamma(phi) * p / rho)
        return float(np.max(np.abs(u) + c))

    def admissible(self, w):
        w = np.asarray(w, dtype=float)
        finite = np.all(np.isfinite(w), axis=-1)
        rho = w[..., 0]
        ok = finite & (rho > 0)
        with np.errstate(invalid="ignore", divide="ignore"):
            u = np.where(ok, w[..., 1] / np.where(ok, rho, 1.0), 0.0)
            e = np.where(ok, w[..., 2] / np.where(ok, rho, 1.0) - 0.5 * u * u, 0.0)
            phi = np.where(ok, w[..., 3] / np.where(ok, rho, 1.0), 0.0)
        return ok & (e > 0) & (phi >= -self.phi_atol) & (phi <= 1.0 + self.phi_atol)

    def violation(self, w):
        w = np.asarray(w, dtype=float)
        rho = w[0]
        if not np.isfinite(w).all():
            return f"non-finite state {tuple(w)}"
        if rho <= 0:
            return f"rho={rho:.6g} <= 0"
        u = w[1] / rho
        e = w[2] / rho - 0.5 * u * u
        phi = w[3] / rho
        if e <= 0:
            return f"internal energy e={e:.6g} <= 0 (rho={rho:.6g}, u={u:.6g})"
        return f"mass fraction phi={phi:.9g} outside [0, 1]"

    def to_primitive(self, w):
        rho, u, e, p, phi = self._decompose(w)
        return np.stack([rho, u, p, phi], axis=-1)

    def from_primitive(self, prim):
        """(rho, u, p, phi) -> conservative, with e from the mixture law."""
        prim = np.asarray(prim, dtype=float)
        rho, u, p, phi = prim[..., 0], prim[..., 1], prim[..., 2], prim[..., 3]
        e = p / ((self.mixture_gamma(phi) - 1.0) * rho)
        w = np.empty_like(prim)
        w[..., 0] = rho
        w[..., 1] = rho * u
        w[..., 2] = rho * (e + 0.5 * u * u)
        w[..., 3] = rho * phi
        return w


MODEL_KINDS = {
    "jinxin": JinXinModel,
    "chaplygin": ChaplyginModel,
    "twophase": TwoPhaseModel,
}
