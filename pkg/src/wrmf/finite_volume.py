"""Exact finite-volume oracles.

Everything here is computed by direct summation of the grand canonical
partition functions at finite volume V, in the log domain:

    Xi_V(a, mu0, mu1) = sum_{n0, n1} V^(n0+n1) / (n0! n1!) exp(mu0 n0 + mu1 n1 - a n0 n1 / V)
    exp(V f_V(a, x))  = sum_n V^n / n! exp(x n - a n^2 / (2V))

The Gaussian-transformed representation of Xi_V is integrated numerically as
an independent route to the same number.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar
from scipy.special import gammaln, logsumexp

from .errors import DomainError, ResourceError, SolverError
from .phase import Kind, PhasePoint, stationary_points
from .specialfn import u_value

BLOCK_ELEMENTS = 4_000_000
LAPLACE_WINDOW = 60.0


@dataclass(frozen=True)
class FiniteVolumeSpec:
    V: float
    n_max: int | None = None  # starting truncation; None picks one from the activities
    tail_tol: float = 1e-16
    hard_cap: int = 400_000

    def __post_init__(self):
        if not (self.V > 0 and math.isfinite(self.V)):
            raise DomainError("volume must be positive and finite")
        if self.n_max is not None and self.n_max < 1:
            raise DomainError("n_max must be a positive integer")

    def start(self, density: float) -> int:
        if self.n_max is not None:
            n = int(self.n_max)
        else:
            V = self.V
            n = math.ceil(V * (density + 10.0 * math.sqrt(density / V)) + 50)
        if n > self.hard_cap:
            raise ResourceError(f"truncation needs more than {self.hard_cap} terms at V={self.V}")
        return int(n)

    def grow(self, n: int) -> int:
        n = int(math.ceil(1.5 * n))
        if n > self.hard_cap:
            raise ResourceError(f"truncation needs more than {self.hard_cap} terms at V={self.V}")
        return n


def _check(a: float, *mus: float):
    if not (a >= 0 and math.isfinite(a)):
        raise DomainError("coupling a must be finite and nonnegative")
    if not all(math.isfinite(m) for m in mus):
        raise DomainError("chemical potentials must be finite")


def _tail_ok(spec: FiniteVolumeSpec, last: float, before_last: float, total: float) -> bool:
    """Geometric bound on the dropped tail from the last term ratio."""
    log_r = last - before_last
    if not log_r < 0:
        return False
    tail = last + log_r - math.log(-math.expm1(log_r))
    return tail <= total + math.log(spec.tail_tol)


def _single_sum(spec: FiniteVolumeSpec, logterm, density: float):
    """log of ``sum_n exp(logterm(n))`` with adaptive truncation; also returns n and terms."""
    n_hi = max(spec.start(density), 2)
    while True:
        n = np.arange(n_hi + 1, dtype=float)
        terms = logterm(n)
        total = float(logsumexp(terms))
        if _tail_ok(spec, terms[-1], terms[-2], total):
            return total, n, terms
        n_hi = spec.grow(n_hi)


def _f_terms(V: float, a: float, x: float):
    lv = math.log(V)
    return lambda n: n * (lv + x) - gammaln(n + 1.0) - a * n * n / (2.0 * V)


def log_f_sum(spec: FiniteVolumeSpec, a: float, x: float) -> float:
    """``V f_V(a, x)``."""
    _check(a, x)
    total, _, _ = _single_sum(spec, _f_terms(spec.V, a, x), u_value(a, x))
    return total


def f_V_value(spec: FiniteVolumeSpec, a: float, x: float) -> float:
    return log_f_sum(spec, a, x) / spec.V


def u_V_moments(spec: FiniteVolumeSpec, a: float, x: float) -> tuple[float, float, float]:
    """``(<n>, <(n-<n>)^2>, <(n-<n>)^3>) / V``: u_V and its first two x-derivatives."""
    _check(a, x)
    total, n, terms = _single_sum(spec, _f_terms(spec.V, a, x), u_value(a, x))
    w = np.exp(terms - total)
    w /= w.sum()
    mean = float(np.dot(w, n))
    c = n - mean
    var = float(np.dot(w, c * c))
    third = float(np.dot(w, c * c * c))
    return mean / spec.V, var / spec.V, third / spec.V


# --- two-component double sum ---------------------------------------------------


def _double_terms(V: float, a: float, mu0: float, mu1: float, n: np.ndarray):
    lv = math.log(V)
    base0 = n * (lv + mu0) - gammaln(n + 1.0)
    base1 = n * (lv + mu1) - gammaln(n + 1.0)
    return base0, base1, a / V


def _log_xi(spec: FiniteVolumeSpec, a: float, mu0: float, mu1: float) -> tuple[float, int]:
    """Unnormalized ``ln Xi_V`` and the truncation that met the tail criterion."""
    _check(a, mu0, mu1)
    V = spec.V
    N = max(spec.start(math.exp(max(mu0, mu1))), 2)
    while True:
        n = np.arange(N + 1, dtype=float)
        base0, base1, c = _double_terms(V, a, mu0, mu1, n)
        rows = max(1, BLOCK_ELEMENTS // (N + 1))
        parts = []
        for s in range(0, N + 1, rows):
            block = base0[s:s + rows, None] + base1[None, :] - c * np.outer(n[s:s + rows], n)
            parts.append(logsumexp(block))
        total = float(logsumexp(parts))
        # boundary row n0 = N and column n1 = N, each followed by its predecessor
        row, row_prev = base0[N] + base1 - c * N * n, base0[N - 1] + base1 - c * (N - 1) * n
        col, col_prev = base0 + base1[N] - c * N * n, base0 + base1[N - 1] - c * (N - 1) * n
        ok = (_tail_ok(spec, float(logsumexp(row)), float(logsumexp(row_prev)), total)
              and _tail_ok(spec, float(logsumexp(col)), float(logsumexp(col_prev)), total))
        if ok:
            return total, N
        N = spec.grow(N)


def log_xi_two_component(spec: FiniteVolumeSpec, a: float, mu0: float, mu1: float) -> float:
    """``(1/V) ln Xi_V(a, mu0, mu1)`` by exact double summation."""
    return _log_xi(spec, a, mu0, mu1)[0] / spec.V


@dataclass(frozen=True)
class OccupancyDistribution:
    V: float
    log_weights: np.ndarray  # unnormalized, indexed [n0, n1]
    log_norm: float  # ln Xi_V

    def weights(self) -> np.ndarray:
        return np.exp(self.log_weights - self.log_norm)

    def m_marginal(self) -> tuple[np.ndarray, np.ndarray]:
        """Distribution of ``m = n0 - n1``."""
        N = self.log_weights.shape[0] - 1
        n = np.arange(N + 1)
        m = (n[:, None] - n[None, :]).ravel()
        p = np.bincount(m + N, weights=self.weights().ravel(), minlength=2 * N + 1)
        return np.arange(-N, N + 1), p

    def modes(self, smoothing: int = 1) -> list[int]:
        """Strict local maxima of the m-marginal after a moving average of given width."""
        m, p = self.m_marginal()
        if smoothing > 1:
            p = np.convolve(p, np.ones(smoothing) / smoothing, mode="same")
        inner = (p[1:-1] > p[:-2]) & (p[1:-1] > p[2:])
        return [int(v) for v in m[1:-1][inner]]


def occupancy_distribution(spec: FiniteVolumeSpec, a: float, mu0: float, mu1: float) -> OccupancyDistribution:
    total, N = _log_xi(spec, a, mu0, mu1)
    n = np.arange(N + 1, dtype=float)
    base0, base1, c = _double_terms(spec.V, a, mu0, mu1, n)
    lw = base0[:, None] + base1[None, :] - c * np.outer(n, n)
    return OccupancyDistribution(spec.V, lw, total)


# --- Gaussian-transformed integral ------------------------------------------------


def E_V(spec: FiniteVolumeSpec, a: float, mu0: float, mu1: float, y: float) -> float:
    return (log_f_sum(spec, a, mu0 + y) + log_f_sum(spec, a, mu1 - y)) / spec.V - y * y / (2.0 * a)


def laplace_integral(spec: FiniteVolumeSpec, a: float, mu0: float, mu1: float) -> float:
    """``(1/V) ln Xi_V`` from ``sqrt(V/(2 pi a)) * integral exp(V E_V(y)) dy``.

    This is an exact identity at every V, so it must reproduce
    :func:`log_xi_two_component` to quadrature accuracy.
    """
    if not a > 0:
        raise DomainError("the Gaussian representation needs a > 0")
    _check(a, mu0, mu1)
    V = spec.V

    def ev(y):
        return E_V(spec, a, mu0, mu1, y)

    # maxima of E_V sit near the mean-field local maxima; a coarse grid guards the rest
    pt = PhasePoint(a, mu0, mu1)
    seeds = [s.y for s in stationary_points(pt) if s.kind is not Kind.LOCAL_MIN]
    lo = -a * math.exp(mu1) - 1.0
    hi = a * math.exp(mu0) + 1.0
    grid = np.linspace(lo, hi, 201)
    gv = np.array([ev(y) for y in grid])
    seeds.append(float(grid[int(np.argmax(gv))]))
    peaks = []
    step = max(1.0 / math.sqrt(V), (hi - lo) / 200)
    for s in seeds:
        res = minimize_scalar(lambda y: -ev(y), bounds=(s - step, s + step), method="bounded",
                              options={"xatol": 1e-10})
        peaks.append(float(res.x) if -res.fun >= ev(s) else s)
    peaks = sorted(set(peaks))
    e_max = max(ev(y) for y in peaks)

    def edge(y0, direction):
        d = 1.0 / math.sqrt(V)
        y = y0 + direction * d
        while V * (e_max - ev(y)) <= LAPLACE_WINDOW:
            d *= 2.0
            y = y0 + direction * d
            if d > 1e6:
                raise SolverError("integrand does not decay")
        return y

    a_lo, a_hi = edge(peaks[0], -1.0), edge(peaks[-1], 1.0)
    value, err = quad(lambda y: math.exp(V * (ev(y) - e_max)), a_lo, a_hi,
                      points=peaks, epsabs=0.0, epsrel=1e-12, limit=500)
    if not (value > 0 and err <= 1e-9 * value):
        raise SolverError(f"quadrature did not converge: value={value}, error estimate={err}")
    log_xi = 0.5 * math.log(V / (2.0 * math.pi * a)) + V * e_max + math.log(value)
    return log_xi / V


# --- one-component identity --------------------------------------------------------


def log_xi_one_component(spec: FiniteVolumeSpec, a: float, theta: float, mu: float) -> float:
    """Unnormalized ``ln Xi_hat_V`` from its own single sum."""
    if not theta > 0:
        raise DomainError("theta must be positive")
    _check(a, mu)
    V = spec.V
    lv = math.log(V)

    def terms(n):
        return n * (lv + mu) - gammaln(n + 1.0) + V * theta * np.expm1(-a * n / V)

    total, _, _ = _single_sum(spec, terms, math.exp(max(mu, math.log(theta))))
    return total


def one_component_identity(spec: FiniteVolumeSpec, a: float, theta: float, mu: float) -> float:
    """``ln Xi_hat_V(a, mu, theta) - (ln Xi_V(a, mu, ln theta) - V theta)``; zero exactly."""
    lhs = log_xi_one_component(spec, a, theta, mu)
    rhs = _log_xi(spec, a, mu, math.log(theta))[0] - spec.V * theta
    return lhs - rhs
