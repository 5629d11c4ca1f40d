#!/usr/bin/env python3
"""Derivatives of exp(-1/x^2) near 0, in double precision and with mpmath.

Shows how small f^(k)(x0) really is for small x0, and where it stops being
below a given bound.

    python3 scripts/flatness_probe.py --x0 0.05 --kmax 20 --bound 1e-100
"""
import argparse

import mpmath as mp

from taylor_forge.ode import expinvsq_derivative_stream


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x0", type=float, default=0.05)
    ap.add_argument("--kmax", type=int, default=20)
    ap.add_argument("--bound", type=float, default=1e-100)
    ap.add_argument("--dps", type=int, default=80)
    args = ap.parse_args()

    mp.mp.dps = args.dps
    stream, _ = expinvsq_derivative_stream(args.x0, args.kmax)
    f = lambda x: mp.exp(-1 / x**2)
    print(f"{'k':>3} {'package':>14} {'mpmath':>14} {'rel diff':>9}  <= {args.bound:g}")
    for k, v in enumerate(stream.values):
        ref = mp.diff(f, mp.mpf(str(args.x0)), k)
        rel = abs(v - ref) / abs(ref) if ref else 0
        print(f"{k:3d} {v:14.6e} {float(ref):14.6e} {float(rel):9.1e}  {'yes' if abs(v) <= args.bound else 'NO'}")


if __name__ == "__main__":
    main()
