"""Landscape, stationary points and phase classification at fixed coupling.

The landscape is ``E(y) = f(a, mu0 + y) + f(a, mu1 - y) - y^2 / (2a)``.  Its
stationary points solve ``h(y) = a u(a, mu0 + y) - a u(a, mu1 - y) - y = 0``
(``E' = h / a``), and the global maxima decide the region:

* SINGLE_PHASE: one global maximum,
* CRITICAL: ``mu0 = mu1 = 1 - ln a`` (one degenerate maximum at y = 0),
* COEXISTENCE: ``mu0 = mu1 > 1 - ln a`` (two maxima at ``+-ybar``).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, SolverError
from .specialfn import f_value, log_u_value, psi_value, u_value


class Region(str, enum.Enum):
    SINGLE_PHASE = "SinglePhase"
    CRITICAL = "Critical"
    COEXISTENCE = "Coexistence"


class Kind(str, enum.Enum):
    LOCAL_MAX = "local-max"
    LOCAL_MIN = "local-min"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class PhasePoint:
    a: float
    mu0: float
    mu1: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.a, self.mu0, self.mu1)):
            raise DomainError(f"non-finite phase point {self}")
        if self.a < 0:
            raise DomainError("coupling a must be nonnegative")

    @property
    def critical_mu(self) -> float:
        """Chemical potential ``1 - ln a`` of the critical point at this coupling."""
        return 1.0 - math.log(self.a)


@dataclass(frozen=True)
class PhaseTolerances:
    """Numerical gates; membership in the measure-zero sets uses eq/crit."""

    eq: float = 1e-12  # |mu0 - mu1| below this counts as the symmetric axis
    crit: float = 1e-12  # |mu - (1 - ln a)| below this counts as critical
    tie: float = 1e-10  # maxima of E closer than this are reported together
    merge: float = 1e-6  # roots closer than this are one degenerate root
    curvature: float = 1e-9  # |ln(s0 s1)| below this marks a root degenerate


DEFAULT_TOL = PhaseTolerances()


@dataclass(frozen=True)
class StationaryPoint:
    y: float
    kind: Kind
    E_value: float


@dataclass(frozen=True)
class PhaseSolution:
    point: PhasePoint
    region: Region
    maximizers: list[StationaryPoint]
    order_parameter: float = 0.0
    stationary: list[StationaryPoint] = field(default_factory=list)
    near_degenerate: bool = False

    @property
    def y_star(self) -> list[float]:
        return [m.y for m in self.maximizers]


def _require_positive_a(point: PhasePoint):
    if point.a <= 0:
        raise DomainError("the landscape needs a > 0; a = 0 is the free gas")


def landscape_E(point: PhasePoint, y):
    _require_positive_a(point)
    a = point.a
    y = np.asarray(y, dtype=float)
    out = f_value(a, point.mu0 + y) + f_value(a, point.mu1 - y) - y * y / (2.0 * a)
    return float(out) if np.ndim(out) == 0 else out


def _log_s(point: PhasePoint, y):
    """``ln(a u(a, mu0+y))`` and ``ln(a u(a, mu1-y))``."""
    la = math.log(point.a)
    return (la + np.asarray(log_u_value(point.a, point.mu0 + y)),
            la + np.asarray(log_u_value(point.a, point.mu1 - y)))


def landscape_h(point: PhasePoint, y):
    """``a * E'(y) = s0 - s1 - y`` with ``s0 = a u(a, mu0+y)``, ``s1 = a u(a, mu1-y)``.

    Through ``s + ln s = ln a + x`` the cancelling pair ``s0 - y`` (y > 0) or
    ``s1 + y`` (y < 0) is replaced by logarithms.  That form is accurate to
    about ``eps * |ln a|`` in absolute terms, which is poor when a is tiny and
    h itself is of order a; each point takes whichever form has the smaller
    rounding bound.
    """
    _require_positive_a(point)
    y = np.asarray(y, dtype=float)
    la = math.log(point.a)
    ls0, ls1 = _log_s(point, y)
    with np.errstate(over="ignore", invalid="ignore"):
        s0, s1 = np.exp(ls0), np.exp(ls1)
        right = la + point.mu0 - ls0 - s1
        left = s0 + ls1 - la - point.mu1
        log_form = np.where(y >= 0, right, left)
        log_err = np.where(y >= 0, abs(la) + abs(point.mu0) + np.abs(ls0) + s1,
                           s0 + np.abs(ls1) + abs(la) + abs(point.mu1))
        direct = s0 - s1 - y
        direct_err = s0 + s1 + np.abs(y)
    out = np.where(direct_err < log_err, direct, log_form)
    return float(out) if np.ndim(out) == 0 else out


def landscape_dh(point: PhasePoint, y):
    """``a * E''(y) = (s0 s1 - 1) / ((1 + s0)(1 + s1))``."""
    _require_positive_a(point)
    ls0, ls1 = _log_s(point, np.asarray(y, dtype=float))
    with np.errstate(over="ignore"):
        out = np.expm1(ls0 + ls1) / ((1.0 + np.exp(ls0)) * (1.0 + np.exp(ls1)))
    return float(out) if np.ndim(out) == 0 else out


def _stability(point: PhasePoint, y) -> float:
    # ln(s0 s1); the sign of E'' is the sign of this quantity
    ls0, ls1 = _log_s(point, y)
    return float(ls0 + ls1)


def root_bracket(point: PhasePoint) -> tuple[float, float]:
    """Interval guaranteed to hold every stationary point.

    At a root with y > 0, ``ln s0 = ln a + mu0 - s1`` so ``y < s0 <= a e^{mu0}``
    (and symmetrically for y < 0).  The bound is attained as the other density
    vanishes, so a root can sit within rounding of it; the interval is doubled
    to keep h clearly signed at both ends.
    """
    a = point.a
    return -2.0 * a * math.exp(point.mu1) - 1.0, 2.0 * a * math.exp(point.mu0) + 1.0


def _kind(log_s0s1: float, tol: PhaseTolerances) -> Kind:
    if log_s0s1 < -tol.curvature:
        return Kind.LOCAL_MAX
    if log_s0s1 > tol.curvature:
        return Kind.LOCAL_MIN
    return Kind.DEGENERATE


def _symmetric_roots(point: PhasePoint, mu: float, tol: PhaseTolerances) -> list[tuple[float, bool]]:
    # on mu0 = mu1 the nonzero roots satisfy psi(y) = mu - (1 - ln a) exactly
    delta = mu - point.critical_mu
    if delta > tol.crit:
        ybar = order_parameter(point.a, mu)
        return [(-ybar, False), (0.0, False), (ybar, False)]
    return [(0.0, abs(delta) <= tol.crit)]


def h_extrema(point: PhasePoint) -> list[float]:
    """Points where h' = 0, i.e. ``s0 s1 = 1`` (zero or two of them).

    ``ln s0 + ln s1`` increases for y < eta and decreases for y > eta, with
    ``eta = (mu1 - mu0)/2``, so each side holds at most one zero.
    """
    lo, hi = root_bracket(point)
    eta = 0.5 * (point.mu1 - point.mu0)
    peak = _stability(point, eta)
    if peak <= 0.0:
        return []
    out = []
    for end in (lo, hi):
        if _stability(point, end) >= 0.0:
            out.append(end)
        else:
            out.append(brentq(lambda y: _stability(point, y), min(end, eta), max(end, eta),
                              xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500))
    return out


def _h_tolerance(point: PhasePoint) -> float:
    return 64 * np.finfo(float).eps * (1.0 + abs(math.log(point.a)) + abs(point.mu0) + abs(point.mu1))


def _enumerate_roots(point: PhasePoint, tol: PhaseTolerances) -> list[tuple[float, bool]]:
    lo, hi = root_bracket(point)
    breaks = [lo, *h_extrema(point), hi]
    hb = [landscape_h(point, y) for y in breaks]
    htol = _h_tolerance(point)

    roots: list[tuple[float, bool]] = []
    for y, hy in zip(breaks[1:-1], hb[1:-1]):
        if abs(hy) <= htol:
            roots.append((y, True))
    # h is monotone between consecutive breakpoints
    for (y0, h0), (y1, h1) in zip(zip(breaks, hb), zip(breaks[1:], hb[1:])):
        if abs(h0) <= htol or abs(h1) <= htol or h0 * h1 > 0:
            continue
        r = brentq(lambda y: landscape_h(point, y), y0, y1,
                   xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
        roots.append((r, False))
    roots.sort()
    merged: list[tuple[float, bool]] = []
    for r, deg in roots:
        if merged and r - merged[-1][0] <= tol.merge:
            keep = merged[-1][0] if merged[-1][1] else r
            merged[-1] = (keep, True)
        else:
            merged.append((r, deg))
    if not merged:
        raise SolverError(
            f"no stationary point found for {point}: bracket [{lo}, {hi}], h at breaks {hb}"
        )
    return merged


def stationary_points(point: PhasePoint, tol: PhaseTolerances = DEFAULT_TOL) -> list[StationaryPoint]:
    """All real solutions of ``y = a u(a, mu0+y) - a u(a, mu1-y)``, ascending in y.

    Off the symmetric axis the extrema of h split the bracket into monotone
    pieces, so each piece holds at most one root.  Roots closer than
    ``tol.merge`` and roots sitting on an extremum of h are double roots and
    come back as DEGENERATE.
    """
    _require_positive_a(point)
    if abs(point.mu0 - point.mu1) <= tol.eq:
        roots = _symmetric_roots(point, 0.5 * (point.mu0 + point.mu1), tol)
    else:
        roots = _enumerate_roots(point, tol)
    out = []
    for y, degenerate in roots:
        ls0, ls1 = _log_s(point, y)
        kind = Kind.DEGENERATE if degenerate else _kind(float(ls0 + ls1), tol)
        # at a stationary point E = a u0 u1 + u0 + u1, free of the y^2 cancellation
        u0 = float(u_value(point.a, point.mu0 + y))
        u1 = float(u_value(point.a, point.mu1 - y))
        out.append(StationaryPoint(float(y), kind, point.a * u0 * u1 + u0 + u1))
    return out


def order_parameter(a: float, mu: float) -> float:
    """Positive root ybar of ``psi(y) = mu - (1 - ln a)``; 0 when mu <= 1 - ln a."""
    if a <= 0:
        raise DomainError("order parameter needs a > 0")
    delta = mu - (1.0 - math.log(a))
    if delta <= 0:
        return 0.0
    # psi grows like y^2/24 near 0 and like y + ln y - 1 far out; widen until bracketed
    hi = max(math.sqrt(24.0 * delta), delta + 2.0)
    while psi_value(hi) < delta:
        hi *= 2.0
    lo = min(1e-300, hi)
    return brentq(lambda y: psi_value(y) - delta, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)


def spinodal_eta(xi: float) -> float:
    """Upper spinodal branch ``sqrt(xi^2-1) + ln(xi - sqrt(xi^2-1))`` for xi >= 1.

    In terms of ``xi = (mu0+mu1)/2 + ln a`` and ``eta = (mu1-mu0)/2`` the
    three-root region is ``|eta| < spinodal_eta(xi)``.
    """
    if not math.isfinite(xi) or xi < 1.0:
        raise DomainError("no spinodal for xi < 1")
    t = math.acosh(xi)  # the branch equals sinh(t) - t
    if t < 1e-2:
        t2 = t * t
        return t * t2 * (1.0 / 6.0 + t2 * (1.0 / 120.0 + t2 / 5040.0))
    return math.sinh(t) - t


def spinodal_coordinates(point: PhasePoint) -> tuple[float, float]:
    """``(xi, eta)`` of a phase point with a > 0."""
    _require_positive_a(point)
    return 0.5 * (point.mu0 + point.mu1) + math.log(point.a), 0.5 * (point.mu1 - point.mu0)


def classify(point: PhasePoint, tol: PhaseTolerances = DEFAULT_TOL) -> PhaseSolution:
    if point.a == 0:
        free = StationaryPoint(0.0, Kind.LOCAL_MAX, math.exp(point.mu0) + math.exp(point.mu1))
        return PhaseSolution(point, Region.SINGLE_PHASE, [free], 0.0, [free])

    stat = stationary_points(point, tol)
    on_axis = abs(point.mu0 - point.mu1) <= tol.eq
    mu = 0.5 * (point.mu0 + point.mu1)
    delta = mu - point.critical_mu

    if on_axis and delta > tol.crit:
        ybar = stat[-1].y
        maxima = [stat[0], stat[-1]]
        return PhaseSolution(point, Region.COEXISTENCE, maxima, ybar, stat)
    if on_axis and abs(delta) <= tol.crit:
        return PhaseSolution(point, Region.CRITICAL, [stat[0]], 0.0, stat)

    candidates = [s for s in stat if s.kind is not Kind.LOCAL_MIN]
    best = max(s.E_value for s in candidates)
    maxima = [s for s in candidates if best - s.E_value <= tol.tie]
    return PhaseSolution(point, Region.SINGLE_PHASE, maxima, 0.0, stat,
                         near_degenerate=len(maxima) > 1)
