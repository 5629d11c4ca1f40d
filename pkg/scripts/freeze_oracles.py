#!/usr/bin/env python3
"""Compute high-precision reference values with mpmath and freeze them to JSON.

Nothing here imports taylor_forge, so the frozen numbers are an independent
check on the double-precision solvers. Re-run only when adding new values:

    python3 scripts/freeze_oracles.py
"""
import json
from pathlib import Path

import mpmath as mp

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "frozen_oracles.json"
ROOT_N = (10, 50, 100, 500, 750, 1000, 1500, 2000)
TABLE1_X = (-4, -3.6, -2.8, -2.2, -1.5, -1.0, 0, 1.0, 1.5, 2.2, 2.8, 3.6, 4)


def expinvsq_coeffs(x0, N):
    """Taylor coefficients of exp(-1/x^2) about x0 in working precision.

    Uses the binomial series of -1/x^2 and the recursion for exp(h), both in
    mpmath, so only the algebra (not the floating format) is shared with the
    package.
    """
    x0 = mp.mpf(x0)
    h = [-(k + 1) * (-1) ** k / x0 ** (k + 2) for k in range(N + 1)]
    f = [mp.exp(h[0])]
    for n in range(N):
        f.append(mp.fsum((k + 1) * h[k + 1] * f[n - k] for k in range(n + 1)) / (n + 1))
    return f


def main():
    mp.mp.dps = 40
    out = {}
    # normal CDF at the table grid, and its Maclaurin coefficients by numeric differentiation
    out["normal_cdf"] = {format(x, "g"): float(mp.ncdf(x)) for x in TABLE1_X}
    out["normal_cdf_maclaurin"] = [float(c) for c in mp.taylor(mp.ncdf, 0, 30)]
    # low-order expinvsq coefficients by mpmath's own differentiation (a second method)
    for x0 in (1, 2, -1.5):
        out[f"expinvsq_taylor_{x0:g}"] = [float(c) for c in mp.taylor(lambda x: mp.exp(-1 / x**2), x0, 30)]
    # root values for the long expansions, in 40-digit arithmetic
    mp.mp.dps = 60
    for x0 in (1, 2):
        f = expinvsq_coeffs(x0, max(ROOT_N))
        out[f"expinvsq_root_{x0}"] = {str(n): float(abs(f[n]) ** (mp.mpf(1) / n)) for n in ROOT_N}
    # flatness witnesses at 0.05: f^(k)(0.05) for k <= 20
    mp.mp.dps = 80
    out["expinvsq_derivatives_0.05"] = [
        mp.nstr(mp.diff(lambda x: mp.exp(-1 / x**2), mp.mpf("0.05"), k), 12) for k in range(21)
    ]
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
