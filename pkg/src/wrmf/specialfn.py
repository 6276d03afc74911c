"""Special functions of the mean-field model.

``u(a, x)`` is the positive solution of ``u * exp(a*u) = exp(x)``, i.e. the
scaled principal Lambert W function ``W(a e^x) / a``.  It is computed without
ever forming ``a * e^x`` so large ``x`` does not overflow.

All public functions accept scalars or numpy arrays (broadcast together) and
return a Python float for scalar input.
"""
from __future__ import annotations

import numpy as np

from .errors import DomainError, SolverError

MAX_ITER = 100
RESID_TOL = 1e-14
PSI_SERIES_SWITCH = 1e-3


def _as_float(out):
    return float(out) if np.ndim(out) == 0 else out


def _check_finite(*args):
    for v in args:
        if not np.all(np.isfinite(v)):
            raise DomainError("arguments must be finite")


def _log_u(a, x):
    """Return ln u(a, x) for arrays a > 0, x (already broadcast).

    Newton on ``g(t) = a e^t + t - x`` with t = ln u.  ``g`` is increasing and
    convex, so every iterate is kept inside a shrinking bracket; steps leaving
    the bracket fall back to bisection.
    """
    # u <= e^x, and u > 1 forces a*u < x, hence u <= max(1, x/a) when x > 0
    with np.errstate(over="ignore"):
        hi = np.where(x > 0, np.minimum(x, np.log(np.maximum(1.0, x / a))), x)
    lo = x - a * np.exp(hi)
    # e^x / (1 + a e^x), evaluated in the log domain
    t = x - np.logaddexp(0.0, np.log(a) + x)
    t = np.clip(t, lo, hi)
    base = np.maximum(1.0, np.abs(x))
    done = np.zeros(t.shape, dtype=bool)
    for _ in range(MAX_ITER):
        at = a * np.exp(t)
        g = at + t - x
        hi = np.where(g > 0, np.minimum(hi, t), hi)
        lo = np.where(g < 0, np.maximum(lo, t), lo)
        step = g / (at + 1.0)
        t_new = t - step
        outside = (t_new <= lo) | (t_new >= hi)
        t_new = np.where(outside, 0.5 * (lo + hi), t_new)
        small = np.abs(step) <= 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(t))
        # a e^t carries a relative rounding error of about |t| eps
        scale = base + at * np.abs(t)
        done |= small & (np.abs(g) <= RESID_TOL * scale)
        t = np.where(done, t, t_new)
        if done.all():
            return t
    at = a * np.exp(t)
    g = at + t - x
    bad = np.abs(g) > RESID_TOL * (base + at * np.abs(t))
    if bad.any():
        i = np.flatnonzero(bad.ravel())[0]
        raise SolverError(
            f"u(a, x) did not converge: a={a.ravel()[i]!r}, x={x.ravel()[i]!r}, "
            f"residual={g.ravel()[i]:.3e}"
        )
    return t


def u_value(a, x):
    """Positive root u of ``u * exp(a u) = exp(x)``; equals ``exp(x)`` at a = 0."""
    a, x = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(x, dtype=float))
    _check_finite(a, x)
    if np.any(a < 0):
        raise DomainError("coupling a must be nonnegative")
    with np.errstate(over="ignore"):
        out = np.exp(x)
    pos = a > 0
    if pos.any():
        out = np.array(out, copy=True)
        out[pos] = np.exp(_log_u(a[pos], x[pos]))
    return _as_float(out)


def log_u_value(a, x):
    """``ln u(a, x)`` computed directly, accurate where u under- or overflows."""
    a, x = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(x, dtype=float))
    _check_finite(a, x)
    if np.any(a < 0):
        raise DomainError("coupling a must be nonnegative")
    out = np.array(x, copy=True)
    pos = a > 0
    if pos.any():
        out[pos] = _log_u(a[pos], x[pos])
    return _as_float(out)


def u_dx(a, x):
    """x-derivative of u: ``u / (1 + a u)``."""
    u = np.asarray(u_value(a, x))
    return _as_float(u / (1.0 + np.asarray(a, dtype=float) * u))


def u_dxx(a, x):
    """Second x-derivative of u: ``u / (1 + a u)**3``."""
    u = np.asarray(u_value(a, x))
    return _as_float(u / (1.0 + np.asarray(a, dtype=float) * u) ** 3)


def f_value(a, x):
    """Free-energy surface ``(a/2) u**2 + u``; its x-derivative is u itself."""
    u = np.asarray(u_value(a, x))
    return _as_float(0.5 * np.asarray(a, dtype=float) * u * u + u)


def _psi_series(y):
    y2 = y * y
    return y2 * (1.0 / 24.0 - y2 * (1.0 / 960.0 - y2 / 45360.0))


def _psi_direct(y):
    # y/(e^y - 1) and ln(y/(e^y - 1)) written to stay finite for large y
    em = -np.expm1(-y)
    b = y * np.exp(-y) / em
    return b - 1.0 + np.log(y) - np.log(em)


def psi_value(y):
    """Order-parameter profile ``y + y/(e^y-1) - 1 + ln(y/(e^y-1))`` for y > 0.

    Below ``PSI_SERIES_SWITCH`` the leading terms of the small-y expansion
    ``y^2/24 - y^4/960 + y^6/45360`` are used instead of the cancelling form.
    """
    y = np.asarray(y, dtype=float)
    _check_finite(y)
    if np.any(y <= 0):
        raise DomainError("psi is defined for y > 0 only")
    small = y < PSI_SERIES_SWITCH
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        out = np.where(small, _psi_series(y), _psi_direct(np.where(small, 1.0, y)))
    return _as_float(out)


def psi_dy(y):
    """Derivative of psi; positive for every y > 0."""
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainError("psi is defined for y > 0 only")
    # with b = y/(e^y - 1): psi' = 1 + b' + b'/b, b'/b = 1/y - e^y/(e^y - 1)
    em = -np.expm1(-y)
    b = y * np.exp(-y) / em
    dlogb = 1.0 / y - 1.0 / em
    series = y / 12.0 - y**3 / 240.0 + y**5 / 7560.0
    out = np.where(y < 1e-2, series, 1.0 + b * dlogb + dlogb)
    return _as_float(out)


def omega_constant() -> float:
    """u(1, 0): the root of ``w e^w = 1``."""
    return u_value(1.0, 0.0)


__all__ = [
    "u_value",
    "log_u_value",
    "u_dx",
    "u_dxx",
    "f_value",
    "psi_value",
    "psi_dy",
    "omega_constant",
    "PSI_SERIES_SWITCH",
]
