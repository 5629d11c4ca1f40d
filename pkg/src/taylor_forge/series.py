"""Truncated power series and the small polynomial types built on top of them.

A :class:`TaylorSeries` stores normalized coefficients ``c_k = f^(k)(x0)/k!``.
To keep very long expansions inside the double range the coefficients may be
stored for the rescaled variable ``t = (x - x0) / scale``; ``coeff(k)`` and
``log_abs_coeff(k)`` always report the coefficient of ``(x - x0)**k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    CenterMismatchError,
    OrderExceededError,
    SeriesOverflowError,
    SingularCenterError,
)


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    center: float
    coeffs: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise SeriesOverflowError(bad, f"non-finite coefficient at index {bad}")
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ValueError("scale must be positive and finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "center", float(self.center))
        object.__setattr__(self, "scale", float(self.scale))

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def coeff(self, k: int) -> float:
        """Coefficient of ``(x - x0)**k`` (may under/overflow for extreme scales)."""
        a = float(self.coeffs[k])
        if self.scale == 1.0 or a == 0.0:
            return a
        return math.copysign(math.exp(self.log_abs_coeff(k)), a)

    def log_abs_coeff(self, k: int) -> float:
        a = abs(float(self.coeffs[k]))
        if a == 0.0:
            return -math.inf
        return math.log(a) - k * math.log(self.scale)

    def truncate(self, n: int) -> "TaylorSeries":
        if n > self.order:
            raise OrderExceededError(f"cannot truncate order {self.order} series to {n}")
        return TaylorSeries(self.center, self.coeffs[: n + 1], self.scale)

    def __call__(self, x: float, n: int | None = None) -> float:
        return eval_partial_sum(self, x, self.order if n is None else n)

    def __add__(self, other):
        if isinstance(other, TaylorSeries):
            a, b = _aligned(self, other)
            n = min(a.order, b.order)
            return TaylorSeries(a.center, a.coeffs[: n + 1] + b.coeffs[: n + 1], a.scale)
        c = self.coeffs.copy()
        c[0] += other
        return TaylorSeries(self.center, c, self.scale)

    __radd__ = __add__

    def __neg__(self):
        return TaylorSeries(self.center, -self.coeffs, self.scale)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TaylorSeries):
            return cauchy_product(self, other)
        return TaylorSeries(self.center, self.coeffs * float(other), self.scale)

    __rmul__ = __mul__

    def __repr__(self):
        head = ", ".join(f"{v:.6g}" for v in self.coeffs[:6])
        more = ", ..." if self.order > 5 else ""
        return f"TaylorSeries(center={self.center}, order={self.order}, scale={self.scale}, [{head}{more}])"


@dataclass(frozen=True, eq=False)
class DerivativeStream:
    """Raw derivative values ``b_k = f^(k)(x0)``, optionally extendable.

    ``extender`` receives the materialized prefix and returns the next value.
    """

    center: float
    values: tuple
    extender: Callable[[tuple], float] | None = None
    metadata: Mapping = field(default_factory=dict)

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        for k, v in enumerate(vals):
            if not math.isfinite(v):
                raise SeriesOverflowError(k)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def extend(self, k: int) -> "DerivativeStream":
        """Return a stream materialized through index ``k``."""
        if k < len(self.values):
            return self
        if self.extender is None:
            raise OrderExceededError(f"stream has no extender; cannot reach index {k}")
        vals = list(self.values)
        while len(vals) <= k:
            v = float(self.extender(tuple(vals)))
            if not math.isfinite(v):
                raise SeriesOverflowError(len(vals))
            vals.append(v)
        return DerivativeStream(self.center, tuple(vals), self.extender, self.metadata)


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial in x, ascending powers; the zero polynomial is ``()``."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def differentiate(self) -> "Polynomial":
        return Polynomial(tuple(k * a for k, a in enumerate(self.coeffs))[1:])

    def shift_up(self) -> "Polynomial":
        """Multiply by x."""
        return Polynomial((0,) + self.coeffs) if self.coeffs else self

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    def __neg__(self):
        return Polynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(tuple(a * other for a in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__


@dataclass(frozen=True)
class LaurentPolynomial:
    """Polynomial in ``u = 1/x`` with nonnegative exponents, stored sparsely."""

    terms: tuple = ()  # sorted (exponent, coefficient) pairs, no zeros

    def __init__(self, coeffs: Mapping | Sequence = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc = {}
        for m, a in items:
            if m < 0 or int(m) != m:
                raise ValueError(f"exponent must be a nonnegative integer, got {m}")
            acc[int(m)] = acc.get(int(m), 0) + a
        object.__setattr__(self, "terms", tuple(sorted((m, a) for m, a in acc.items() if a != 0)))

    @property
    def coeffs(self) -> dict:
        return dict(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        return LaurentPolynomial(list(self.terms) + list(other.terms))

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return LaurentPolynomial([(m, a * other) for m, a in self.terms])
        return LaurentPolynomial([(m + n, a * b) for m, a in self.terms for n, b in other.terms])

    __rmul__ = __mul__

    def differentiate(self) -> "LaurentPolynomial":
        return laurent_differentiate(self)

    def evaluate(self, u) -> float:
        """Value at ``u``; integer/rational coefficients are summed exactly."""
        u = Fraction(u)
        total = sum((Fraction(a) * u**m for m, a in self.terms), Fraction(0))
        return float(total)

    def at_x(self, x) -> float:
        if x == 0:
            raise SingularCenterError("Laurent polynomial in 1/x evaluated at x = 0")
        return self.evaluate(1 / Fraction(x))


def laurent_differentiate(p: LaurentPolynomial) -> LaurentPolynomial:
    # d/dx u^m = -m u^(m+1) for u = 1/x
    return LaurentPolynomial([(m + 1, -m * a) for m, a in p.terms])


def _aligned(a: TaylorSeries, b: TaylorSeries):
    if a.center != b.center:
        raise CenterMismatchError(f"centers differ: {a.center} vs {b.center}")
    if a.scale != b.scale:
        b = rescale(b, a.scale)
    return a, b


def rescale(s: TaylorSeries, scale: float) -> TaylorSeries:
    """Same series, coefficients re-expressed for ``t = (x - x0) / scale``."""
    if scale == s.scale:
        return s
    ratio = scale / s.scale
    k = np.arange(s.order + 1)
    with np.errstate(over="raise", under="ignore"):
        try:
            c = s.coeffs * ratio ** k
        except FloatingPointError:
            raise SeriesOverflowError(int(np.argmax(k * math.log(ratio) > 700)))
    return TaylorSeries(s.center, c, scale)


def eval_partial_sum(s: TaylorSeries, x: float, n: int) -> float:
    if n > s.order:
        raise OrderExceededError(f"partial sum order {n} exceeds series order {s.order}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    t = (x - s.center) / s.scale
    acc = 0.0
    for a in s.coeffs[n::-1]:
        acc = acc * t + a
    return float(acc)


def differentiate(s: TaylorSeries) -> TaylorSeries:
    """Term-by-term derivative; an order-0 series maps to the zero series."""
    if s.order == 0:
        return TaylorSeries(s.center, [0.0], s.scale)
    k = np.arange(1, s.order + 1)
    return TaylorSeries(s.center, k * s.coeffs[1:] / s.scale, s.scale)


def antiderivative(s: TaylorSeries, constant: float = 0.0) -> TaylorSeries:
    k = np.arange(1, s.order + 2)
    return TaylorSeries(s.center, np.concatenate([[constant], s.coeffs * s.scale / k]), s.scale)


def cauchy_product(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    a, b = _aligned(a, b)
    n = min(a.order, b.order)
    out = np.convolve(a.coeffs[: n + 1], b.coeffs[: n + 1])[: n + 1]
    return TaylorSeries(a.center, out, a.scale)


def exp_of_series(h: TaylorSeries) -> TaylorSeries:
    """Coefficients of ``exp(h)`` from the ODE ``f' = h' f``.

    (n+1) f_{n+1} = sum_{k=0}^{n} (k+1) h_{k+1} f_{n-k}
    """
    N = h.order
    f = np.empty(N + 1)
    f[0] = math.exp(h.coeffs[0]) if h.coeffs[0] < 709.78 else math.inf
    if not math.isfinite(f[0]):
        raise SeriesOverflowError(0)
    dh = np.arange(1, N + 1) * h.coeffs[1:]
    for n in range(N):
        v = float(np.dot(dh[: n + 1], f[n::-1])) / (n + 1)
        if not math.isfinite(v):
            raise SeriesOverflowError(n + 1)
        f[n + 1] = v
    return TaylorSeries(h.center, f, h.scale)


def inverse_square_series(x0: float, N: int, scale: float | None = None) -> TaylorSeries:
    """Taylor series of ``h(x) = -1/x**2`` about ``x0``.

    Stored for ``t = (x - x0)/scale`` with ``scale = |x0|`` by default, which
    keeps every stored coefficient O(k) no matter how long the expansion.
    """
    if x0 == 0:
        raise SingularCenterError("h(x) = -1/x^2 has no expansion about 0")
    s = abs(x0) if scale is None else float(scale)
    r = -s / x0
    k = np.arange(N + 1)
    with np.errstate(over="ignore"):
        c = -(k + 1) * r ** k.astype(float) / (x0 * x0)
    if not np.all(np.isfinite(c)):
        raise SeriesOverflowError(int(np.flatnonzero(~np.isfinite(c))[0]))
    return TaylorSeries(x0, c, s)


def exp_series(N: int, center: float = 0.0, scale: float | None = None) -> TaylorSeries:
    """Series of ``exp(x - center)``; default scale keeps c_k*scale^k representable."""
    s = max(1.0, N / math.e) if scale is None else scale
    k = np.arange(N + 1)
    logs = k * math.log(s) - np.array([math.lgamma(i + 1) for i in k])
    return TaylorSeries(center, np.exp(logs), s)


def normalize(b: DerivativeStream) -> TaylorSeries:
    """c_k = b_k / k!, each entry rounded once (exact rational division)."""
    c = []
    fact = 1
    for k, v in enumerate(b.values):
        if k:
            fact *= k
        c.append(v / fact if fact < 2**53 else float(Fraction(v) / fact))
    return TaylorSeries(b.center, c)


def denormalize(s: TaylorSeries) -> DerivativeStream:
    """b_k = c_k * k!, each entry rounded once; overflow is reported by index."""
    vals = []
    fact = 1
    scale = Fraction(s.scale)
    for k, a in enumerate(s.coeffs):
        if k:
            fact *= k
        a = float(a)
        if s.scale == 1.0 and fact < 2**53:
            v = a * fact
        else:
            try:
                v = float(Fraction(a) * fact / scale**k)
            except OverflowError:
                raise SeriesOverflowError(k) from None
        if not math.isfinite(v):
            raise SeriesOverflowError(k)
        vals.append(v)
    return DerivativeStream(s.center, tuple(vals))


@lru_cache(maxsize=512)
def pascal_row(m: int) -> tuple:
    """Binomial coefficients C(m, 0..m) as correctly rounded doubles."""
    return tuple(float(math.comb(m, k)) for k in range(m + 1))
