"""Equations of state of the two- and one-component systems.

Densities come from the global maximizers of the landscape; the pressure
follows from ``p = a rho0 rho1 + rho0 + rho1``.  The one-component gas at
``(a, theta, mu)`` is the two-component gas at ``(a, mu, ln theta)`` with
``rho = rho0`` and ``p_hat = p - theta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DomainError
from .phase import (
    DEFAULT_TOL,
    PhasePoint,
    PhaseSolution,
    PhaseTolerances,
    Region,
    classify,
    landscape_E,
    order_parameter,
)
from .specialfn import u_value


@dataclass(frozen=True)
class DensityPair:
    rho0: float
    rho1: float

    def pressure(self, a: float) -> float:
        return a * self.rho0 * self.rho1 + self.rho0 + self.rho1

    def swapped(self) -> "DensityPair":
        return DensityPair(self.rho1, self.rho0)


def phase_densities(sol: PhaseSolution) -> list[DensityPair]:
    """Density pairs at the maximizers of an already classified point."""
    pt = sol.point
    return [
        DensityPair(u_value(pt.a, pt.mu0 + y), u_value(pt.a, pt.mu1 - y)) for y in sol.y_star
    ]


def densities(point: PhasePoint, tol: PhaseTolerances = DEFAULT_TOL) -> list[DensityPair]:
    """One density pair per global maximizer (two, mutually swapped, at coexistence)."""
    return phase_densities(classify(point, tol))


def pressure_two_component(point: PhasePoint, tol: PhaseTolerances = DEFAULT_TOL) -> float:
    # every global maximizer gives the same pressure, report the first
    return densities(point, tol)[0].pressure(point.a)


def pressure_from_landscape(point: PhasePoint, tol: PhaseTolerances = DEFAULT_TOL) -> float:
    """Maximal value of E, evaluated from its defining formula."""
    if point.a == 0:
        return math.exp(point.mu0) + math.exp(point.mu1)
    sol = classify(point, tol)
    return max(landscape_E(point, y) for y in sol.y_star)


def self_consistency_residual(point: PhasePoint, pair: DensityPair) -> float:
    """max |rho_i - exp(mu_i - a rho_j)| over both components."""
    a = point.a
    return max(
        abs(pair.rho0 - math.exp(point.mu0 - a * pair.rho1)),
        abs(pair.rho1 - math.exp(point.mu1 - a * pair.rho0)),
    )


def stability(a: float, pair: DensityPair) -> float:
    """``1 - a^2 rho0 rho1``; positive at every local maximum of the landscape."""
    return 1.0 - a * a * pair.rho0 * pair.rho1


# --- one-component system -----------------------------------------------------


@dataclass(frozen=True)
class OneComponentState:
    a: float
    theta: float
    mu: float
    rho: float | None  # None exactly at the jump, see rho_minus/rho_plus
    p_hat: float
    p_hat_closed_form: float
    rho_minus: float | None = None
    rho_plus: float | None = None

    @property
    def at_jump(self) -> bool:
        return self.rho is None


def one_component_p_hat(a, theta, rho):
    """``a theta rho e^{-a rho} + rho - theta (1 - e^{-a rho})`` as a function of rho."""
    rho = np.asarray(rho, dtype=float)
    out = a * theta * rho * np.exp(-a * rho) + rho + theta * np.expm1(-a * rho)
    return float(out) if np.ndim(out) == 0 else out


def pressure_one_component(a: float, theta: float, mu: float,
                           tol: PhaseTolerances = DEFAULT_TOL) -> OneComponentState:
    if theta <= 0 or not math.isfinite(theta):
        raise DomainError("theta must be positive")
    point = PhasePoint(a, mu, math.log(theta))
    pairs = densities(point, tol)
    p_hat = pairs[0].pressure(a) - theta
    if len(pairs) == 2:
        lo, hi = sorted(p.rho0 for p in pairs)
        closed = float(one_component_p_hat(a, theta, lo))
        return OneComponentState(a, theta, mu, None, p_hat, closed, lo, hi)
    rho = pairs[0].rho0
    return OneComponentState(a, theta, mu, rho, p_hat, float(one_component_p_hat(a, theta, rho)))


def has_transition(a: float, theta: float) -> bool:
    """True iff the one-component density jumps somewhere (theta > e / a)."""
    return a > 0 and math.log(theta) > 1.0 - math.log(a)


def density_jump(a: float, theta: float) -> float:
    """Density increment ``ybar(a, ln theta) / a`` at mu = ln theta."""
    if not has_transition(a, theta):
        raise DomainError(f"no phase transition at theta={theta} for a={a} (needs theta > e/a)")
    return order_parameter(a, math.log(theta)) / a


@dataclass(frozen=True)
class Plateau:
    rho_minus: float
    rho_plus: float
    p_star: float


@dataclass(frozen=True)
class IsothermCurve:
    a: float
    theta: float
    samples: list[tuple[float, float]]
    branches: list[str]  # "low", "plateau" or "high" per sample
    plateau: Plateau | None


def plateau(a: float, theta: float) -> Plateau | None:
    if not has_transition(a, theta):
        return None
    mu = math.log(theta)
    ybar = order_parameter(a, mu)
    zm, zp = u_value(a, mu - ybar), u_value(a, mu + ybar)
    return Plateau(zm, zp, a * zp * zm + zp + zm - theta)


def isotherm(a: float, theta: float, rho_grid) -> IsothermCurve:
    """p_hat along ascending densities, flat at p_star across [rho_minus, rho_plus].

    Both plateau endpoints are inserted twice, once closing the outer branch
    (closed form) and once opening/closing the plateau (p_star).
    """
    grid = np.asarray(rho_grid, dtype=float)
    if grid.ndim != 1 or np.any(grid <= 0) or np.any(np.diff(grid) < 0):
        raise DomainError("rho_grid must be positive and ascending")
    if theta <= 0:
        raise DomainError("theta must be positive")
    plat = plateau(a, theta)
    samples: list[tuple[float, float]] = []
    branches: list[str] = []
    if plat is None:
        for r, p in zip(grid, np.atleast_1d(one_component_p_hat(a, theta, grid))):
            samples.append((float(r), float(p)))
            branches.append("low")
        return IsothermCurve(a, theta, samples, branches, None)

    def outer(r):
        return float(one_component_p_hat(a, theta, r))

    low = [r for r in grid if r < plat.rho_minus]
    mid = [r for r in grid if plat.rho_minus < r < plat.rho_plus]
    high = [r for r in grid if r > plat.rho_plus]
    for r in [*low, plat.rho_minus]:
        samples.append((float(r), outer(r)))
        branches.append("low")
    for r in [plat.rho_minus, *mid, plat.rho_plus]:
        samples.append((float(r), plat.p_star))
        branches.append("plateau")
    for r in [plat.rho_plus, *high]:
        samples.append((float(r), outer(r)))
        branches.append("high")
    return IsothermCurve(a, theta, samples, branches, plat)


# --- scale invariance and ground states ----------------------------------------


@dataclass(frozen=True)
class Rescaled:
    point: PhasePoint
    density_factor: float
    pressure_factor: float


def rescale(point: PhasePoint, alpha: float) -> Rescaled:
    """Change of length scale: ``a -> alpha a``, ``mu_i -> mu_i - ln alpha``."""
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    if alpha == 1.0:
        return Rescaled(point, 1.0, 1.0)
    shift = math.log(alpha)
    return Rescaled(PhasePoint(alpha * point.a, point.mu0 - shift, point.mu1 - shift),
                    1.0 / alpha, 1.0 / alpha)


@dataclass(frozen=True)
class GroundStateDrift:
    a: float
    mu0: float
    mu1: float
    rho0: float
    rho1: float
    difference: float
    free_difference: float  # e^{mu0} - e^{mu1}, a lower bound on rho0 - rho1
    rho1_bound: float  # rho0 exp(-(mu0 - mu1) - a (e^{mu0} - e^{mu1}))

    @property
    def bounds_hold(self) -> bool:
        return self.difference >= self.free_difference and self.rho1 <= self.rho1_bound


def ground_state_drift(a: float, mu0: float, mu1: float) -> GroundStateDrift:
    if not mu0 > mu1:
        raise DomainError("ground-state drift needs mu0 > mu1")
    if not a > 0:
        raise DomainError("ground-state drift needs a > 0")
    pair = densities(PhasePoint(a, mu0, mu1))[0]
    free = math.exp(mu0) - math.exp(mu1)
    bound = pair.rho0 * math.exp(-(mu0 - mu1) - a * free)
    return GroundStateDrift(a, mu0, mu1, pair.rho0, pair.rho1, pair.rho0 - pair.rho1, free, bound)


# --- Poisson states -------------------------------------------------------------


def poisson_log_probability(z: float, V: float, n):
    """log of ``(zV)^n / n! exp(-zV)``."""
    if not (z > 0 and V > 0):
        raise DomainError("activity and volume must be positive")
    n = np.asarray(n)
    if np.any(n < 0):
        raise DomainError("occupancy must be nonnegative")
    zv = z * V
    out = n * math.log(zv) - zv - gammaln(n + 1.0)
    return float(out) if np.ndim(out) == 0 else out


def poisson_event_probability(z: float, V: float, n):
    """Probability that a vessel of volume V holds n particles in the Poisson state."""
    out = np.exp(poisson_log_probability(z, V, n))
    return float(out) if np.ndim(out) == 0 else out


def poisson_pair_probability(z0: float, z1: float, V: float, n0, n1):
    """Two independent types: product of the single-type probabilities."""
    out = np.exp(poisson_log_probability(z0, V, n0) + poisson_log_probability(z1, V, n1))
    return float(out) if np.ndim(out) == 0 else out


def poisson_intensities(point: PhasePoint, tol: PhaseTolerances = DEFAULT_TOL) -> list[DensityPair]:
    """Intensities of the limiting Poisson phases; numerically the densities."""
    return densities(point, tol)


__all__ = [
    "DensityPair",
    "GroundStateDrift",
    "IsothermCurve",
    "OneComponentState",
    "Plateau",
    "Region",
    "Rescaled",
    "densities",
    "density_jump",
    "ground_state_drift",
    "has_transition",
    "isotherm",
    "one_component_p_hat",
    "plateau",
    "poisson_event_probability",
    "poisson_intensities",
    "poisson_log_probability",
    "poisson_pair_probability",
    "pressure_from_landscape",
    "pressure_one_component",
    "phase_densities",
    "pressure_two_component",
    "rescale",
    "self_consistency_residual",
    "stability",
]
