"""Independent ground-truth evaluators for tests and table comparisons.

Nothing in the solver paths imports this module. Each registered oracle is
certified at registration against a second, independent evaluation (math.erf
or mpmath) at ten seeded random points.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

import mpmath
from scipy import integrate

from .errors import DomainError

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Oracle:
    name: str
    evaluator: Callable
    domain_note: str
    second_method: Callable
    sampler: Callable  # rng -> point tuple
    tol: float = 1e-10

    def __call__(self, *point, **params):
        return self.evaluator(*point, **params)


REGISTRY: dict = {}


def register(oracle: Oracle, n_points: int = 10, seed: int = 20240601) -> Oracle:
    rng = random.Random(seed)
    for _ in range(n_points):
        point, params = oracle.sampler(rng)
        a = oracle.evaluator(*point, **params)
        b = float(oracle.second_method(*point, **params))
        if not abs(a - b) <= oracle.tol * max(1.0, abs(b)):
            raise AssertionError(f"oracle {oracle.name} failed self-certification at {point}: {a} vs {b}")
    REGISTRY[oracle.name] = oracle
    return oracle


def normal_cdf_reference(x: float) -> float:
    """Phi(x) = 1/2 + integral_0^x of the standard normal density, by quadrature."""
    if abs(x) > 8:
        raise DomainError("normal_cdf_reference is defined for |x| <= 8")
    if x == 0:
        return 0.5
    val, _ = integrate.quad(lambda t: _INV_SQRT_2PI * math.exp(-0.5 * t * t), 0.0, x, epsabs=1e-14, epsrel=1e-13, limit=200)
    return 0.5 + val


def closed_form(name: str, *point, **params) -> float:
    """Evaluate a registered analytic solution; ``point`` may be given as one tuple."""
    if len(point) == 1 and isinstance(point[0], (tuple, list)):
        point = tuple(point[0])
    try:
        oracle = REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown closed form {name!r}; known: {sorted(REGISTRY)}") from None
    return oracle(*point, **params)


def finite_difference_jet(f: Callable[[float], float], x0: float, k: int, h: float | None = None) -> float:
    """k-th derivative (k <= 4) by a central difference, Richardson-extrapolated once."""
    if not 0 <= k <= 4:
        raise ValueError("finite_difference_jet supports 0 <= k <= 4")
    if k == 0:
        return f(x0)
    h = h if h is not None else (1e-3, 1e-3, 5e-3, 1e-2, 2e-2)[k]

    def central(step):
        # k-th central difference, nodes at x0 + (k/2 - i) step
        return sum((-1) ** i * math.comb(k, i) * f(x0 + (k / 2 - i) * step) for i in range(k + 1)) / step**k

    coarse, fine = central(h), central(h / 2)
    return (4 * fine - coarse) / 3


# registrations ------------------------------------------------------------

def _geometric(*x):
    s = sum(x)
    if s >= 1:
        raise DomainError("1/(1 - sum x) needs sum x < 1")
    return 1.0 / (1.0 - s)


def _expinvsq(x):
    return 0.0 if x == 0 else math.exp(-1.0 / (x * x))


def _mp_expinvsq(x):
    return 0 if x == 0 else mpmath.exp(-1 / mpmath.mpf(x) ** 2)


def _newton(t, L=-1.0, Ta=0.0, c=1.0):
    return (c - Ta) * math.exp(L * t) + Ta


def _harmonic(t, M=1.0, c=1.0, d=0.0):
    if M <= 0:
        raise DomainError("M must be positive")
    w = math.sqrt(M)
    return c * math.cos(w * t) + d / w * math.sin(w * t)


def _nonhomogeneous(x, c=0.0, d=0.0):
    C1 = d - 0.5
    C2 = c + d - 1.0
    return C2 - C1 * math.exp(-x) + 0.5 * (math.cos(x) + math.sin(x))


def _homogeneous_const(x, B=1.0, c=2.0, d=1.0):
    if c == d:
        raise DomainError("c must differ from d")
    return B / (c - d) * (math.exp(c * x) - math.exp(d * x))


def _u(rng, lo=-1.0, hi=1.0):
    return rng.uniform(lo, hi)


register(Oracle(
    "normal_cdf", lambda x: normal_cdf_reference(x), "|x| <= 8",
    lambda x: 0.5 * (1 + math.erf(x / math.sqrt(2))),
    lambda r: ((_u(r, -8, 8),), {}), tol=1e-12,
))
register(Oracle(
    "exp_sum", lambda x, y: math.exp(x + y), "R^2",
    lambda x, y: mpmath.exp(x) * mpmath.exp(y),
    lambda r: ((_u(r, -3, 3), _u(r, -3, 3)), {}),
))
register(Oracle(
    "exp_product", lambda x, y: math.exp(x * y), "R^2",
    lambda x, y: mpmath.nsum(lambda j: (mpmath.mpf(x) * y) ** j / mpmath.factorial(j), [0, mpmath.inf]),
    lambda r: ((_u(r, -2, 2), _u(r, -2, 2)), {}),
))
geometric = Oracle(
    "geometric", _geometric, "sum x < 1",
    lambda *x: 1 / (1 - mpmath.fsum(x)),
    lambda r: ((_u(r, -0.4, 0.3), _u(r, -0.4, 0.3)), {}),
)
register(geometric)
register(Oracle("geometric2", _geometric, "x + y < 1", geometric.second_method, geometric.sampler))
register(Oracle(
    "sincos", lambda x, y: math.exp(math.sin(y) - math.cos(x)), "R^2",
    lambda x, y: mpmath.exp(1 - mpmath.cos(x)) * mpmath.exp(mpmath.sin(y) - 1),
    lambda r: ((_u(r, -3, 3), _u(r, -3, 3)), {}),
))
register(Oracle(
    "expinvsq", _expinvsq, "R (extended by 0 at 0)",
    _mp_expinvsq,
    lambda r: ((_u(r, -4, 4),), {}),
))
register(Oracle(
    "newton", _newton, "t real; params L, Ta, c",
    lambda t, L, Ta, c: (c - Ta) * mpmath.exp(L * mpmath.mpf(t)) + Ta,
    lambda r: ((_u(r, 0, 3),), {"L": _u(r, -2, 2), "Ta": _u(r, -20, 20), "c": _u(r, -100, 100)}),
))
register(Oracle(
    "harmonic", _harmonic, "t real; params M > 0, c, d",
    lambda t, M, c, d: c * mpmath.cos(mpmath.sqrt(M) * t) + d / mpmath.sqrt(M) * mpmath.sin(mpmath.sqrt(M) * t),
    lambda r: ((_u(r, -3, 3),), {"M": _u(r, 0.1, 4), "c": _u(r), "d": _u(r)}),
))
register(Oracle(
    "nonhomogeneous", _nonhomogeneous, "x real; params c, d",
    # f(x) = c + d s1 - d s2 + (d-1) s3 + (1-d) s4 with s_r = e_4^(4-r) sums, by mpmath.nsum
    lambda x, c, d: c + mpmath.nsum(
        lambda j: [d, -d, d - 1, 1 - d][int(j - 1) % 4] * mpmath.mpf(x) ** j / mpmath.factorial(j), [1, mpmath.inf]
    ),
    lambda r: ((_u(r, -2, 2),), {"c": _u(r), "d": _u(r)}),
))
register(Oracle(
    "homogeneous_const", _homogeneous_const, "x real; params B, c != d",
    lambda x, B, c, d: B * mpmath.nsum(
        lambda k: (mpmath.mpf(c) ** k - mpmath.mpf(d) ** k) / (c - d) * mpmath.mpf(x) ** k / mpmath.factorial(k), [1, mpmath.inf]
    ),
    lambda r: ((_u(r, -1, 1),), {"B": _u(r), "c": _u(r, 1, 2), "d": _u(r, -0.9, 0.9)}),
))
