"""Independent reference computations used only by the tests.

None of these call into the solvers under test: u comes from plain bisection
or scipy's Lambert W, psi from mpmath at 50 digits, stationary points from a
sign-change scan.
"""
import math

import mpmath as mp
import numpy as np
from scipy.special import lambertw

# frozen from the 50-digit bisection below (see test_specialfn)
OMEGA = 0.567143290409783873
P_FREE_SYMMETRIC = 1.455938092676404194  # Omega^2 + 2 Omega = p(1, 0, 0)


def bisect(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= 0:
            break
    return 0.5 * (lo + hi)


def u_bisect(a, x):
    """Root of ln u + a u - x on (0, e^x]."""
    if a == 0:
        return math.exp(x)
    t = bisect(lambda t: t + a * math.exp(t) - x, x - a * math.exp(x) - 1.0, x)
    return math.exp(t)


def u_lambertw(a, x):
    """W(a e^x) / a through scipy; vectorized, fine while a e^x is finite."""
    a = np.asarray(a, dtype=float)
    return np.real(lambertw(a * np.exp(x))) / a


def psi_mp(y, dps=50):
    with mp.workdps(dps):
        y = mp.mpf(y)
        b = y / mp.expm1(y)
        return float(y + b - 1 + mp.log(b))


def ybar_bisect(delta):
    return bisect(lambda y: psi_mp(y, 30) - delta, 1e-6, 50.0, iters=80)


def scan_roots(a, mu0, mu1, samples=2048):
    """Sign changes of a u(mu0+y) - a u(mu1-y) - y on the analytic bracket."""
    lo, hi = -a * math.exp(mu1) - 1.0, a * math.exp(mu0) + 1.0
    ys = np.linspace(lo, hi, samples)
    h = a * u_lambertw(a, mu0 + ys) - a * u_lambertw(a, mu1 - ys) - ys
    roots = []
    for i in np.flatnonzero(np.sign(h[:-1]) != np.sign(h[1:])):
        f = lambda y: float(a * u_lambertw(a, mu0 + y) - a * u_lambertw(a, mu1 - y) - y)
        roots.append(bisect(f, ys[i], ys[i + 1], iters=100))
    return roots


def central_difference(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)
