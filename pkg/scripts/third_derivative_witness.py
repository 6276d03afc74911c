"""Numeric witness that u''_V(a, x) stays bounded as V grows.

u''_V is the third central moment of the occupancy number divided by V.
Prints max over an x grid for each V next to the limit u''(a, x).
"""
import argparse

import numpy as np

from wrmf.finite_volume import FiniteVolumeSpec, u_V_moments
from wrmf.specialfn import u_dxx


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, default=1.0)
    ap.add_argument("--V", type=float, nargs="+", default=[25, 50, 100, 200, 400, 800])
    args = ap.parse_args()
    xs = np.arange(-5.0, 5.0 + 1e-9, 0.25)
    limit = np.abs(u_dxx(args.a, xs))
    print(f"limit: max |u''| = {limit.max():.6f} at x = {xs[limit.argmax()]:+.2f}")
    for V in args.V:
        spec = FiniteVolumeSpec(V)
        vals = np.array([u_V_moments(spec, args.a, float(x))[2] for x in xs])
        k = int(np.argmax(np.abs(vals)))
        gap = float(np.max(np.abs(vals - u_dxx(args.a, xs))))
        print(f"V={V:6g}: max |u''_V| = {abs(vals[k]):.6f} at x = {xs[k]:+.2f}; sup |u''_V - u''| = {gap:.2e}")


if __name__ == "__main__":
    main()
