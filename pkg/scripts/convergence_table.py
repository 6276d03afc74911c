"""Finite-volume pressure against the infinite-volume formula.

For each (mu0, mu1) prints e_V = |(1/V) ln Xi_V - p| over a range of V, the
observed slope of log e_V against log V, and the Gaussian-integral
cross-check at the smallest V.
"""
import argparse
import time

import numpy as np

from wrmf.eos import pressure_two_component
from wrmf.finite_volume import FiniteVolumeSpec, laplace_integral, log_xi_two_component
from wrmf.phase import PhasePoint


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, default=1.0)
    ap.add_argument("--V", type=float, nargs="+", default=[25, 50, 100, 200, 400])
    args = ap.parse_args()
    points = [(0.0, 0.0), (0.5, -0.5), (1.0, 0.0), (1.5, 1.5)]
    for m0, m1 in points:
        p = pressure_two_component(PhasePoint(args.a, m0, m1))
        t0 = time.perf_counter()
        errs = [abs(log_xi_two_component(FiniteVolumeSpec(V), args.a, m0, m1) - p) for V in args.V]
        slope = np.polyfit(np.log(args.V), np.log(errs), 1)[0]
        spec = FiniteVolumeSpec(args.V[0])
        ident = laplace_integral(spec, args.a, m0, m1) - log_xi_two_component(spec, args.a, m0, m1)
        print(f"mu=({m0:+.2f},{m1:+.2f}) p={p:.10f}")
        for V, e in zip(args.V, errs):
            print(f"   V={V:7g}  e_V={e:.3e}  V*e_V={V * e:.4f}")
        print(f"   slope {slope:.3f}; integral identity at V={args.V[0]:g}: {ident:.2e}; "
              f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
