"""Coefficient streams for differential equations, obtained by differentiating them.

Each ``solve_*`` function produces the derivative stream at the center from the
recursion the equation implies, normalizes it into a :class:`TaylorSeries`,
and pairs it with the analytic solution so the two can be compared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DegenerateProblemError,
    DomainError,
    NearSingularError,
    OrderExceededError,
    SelfCheckError,
    SeriesOverflowError,
    SingularCenterError,
)
from .jets import DerivativeOracle
from .series import (
    DerivativeStream,
    LaurentPolynomial,
    Polynomial,
    TaylorSeries,
    cauchy_product,
    differentiate,
    exp_of_series,
    inverse_square_series,
    laurent_differentiate,
    normalize,
    pascal_row,
)

GAUSS_D = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class SolverConfig:
    max_order: int = 200
    singular_tol: float = 1e-12
    ladder_cap: int = 150
    expinvsq_max_order: int = 4000
    self_check: bool = True
    self_check_order: int = 20
    self_check_rtol: float = 1e-9


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class ClosedFormSolution:
    description: str
    evaluator: Callable[..., float]

    def __call__(self, *x) -> float:
        return self.evaluator(*x)


@dataclass(frozen=True, eq=False)
class LinearImplicitODE:
    """f = g_1 f' + g_2 f'' + ... + g_n f^(n) about x0, with b_1..b_n given."""

    g: tuple
    x0: float
    initial: tuple

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(self.g))
        object.__setattr__(self, "initial", tuple(float(v) for v in self.initial))
        if not self.g:
            raise DomainError("need at least one coefficient function")
        if len(self.initial) != len(self.g):
            raise DomainError(f"expected {len(self.g)} initial values, got {len(self.initial)}")
        if self.g[-1].derivative(0, self.x0) == 0:
            raise SingularCenterError("leading coefficient g_n vanishes at x0")

    @property
    def n(self) -> int:
        return len(self.g)


class _ImplicitRecurrence:
    """Holds the g_j^(k)(x0) table so the stream can keep extending."""

    def __init__(self, problem: LinearImplicitODE):
        self.problem = problem
        self.table = [[] for _ in problem.g]  # table[j-1][k] = g_j^(k)(x0)

    def gk(self, j, k):
        col = self.table[j - 1]
        while len(col) <= k:
            col.append(self.problem.g[j - 1].derivative(len(col), self.problem.x0))
        return col[k]

    def next_value(self, b: tuple) -> float:
        n = self.problem.n
        m = len(b) - n
        acc = b[m]
        for j in range(1, n):
            acc -= b[j + m] * self.gk(j, 0)
        row = pascal_row(m)
        for k in range(1, m + 1):
            inner = 0.0
            for j in range(1, n + 1):
                inner += b[j + m - k] * self.gk(j, k)
            acc -= row[k] * inner
        return acc / self.gk(n, 0)


def theorem1_extend(problem: LinearImplicitODE, M: int, config: SolverConfig = DEFAULT_CONFIG) -> DerivativeStream:
    """Stream b_0..b_{n+M} for ``f = sum_j g_j f^(j)``.

    b_0 = sum_j b_j g_j(x0), and for m >= 1

        b_{n+m} = [b_m - sum_{j<n} b_{j+m} g_j(x0)
                   - sum_{k=1}^{m} C(m,k) sum_{j=1}^{n} b_{j+m-k} g_j^(k)(x0)] / g_n(x0)
    """
    if M < 0:
        raise ValueError("M must be nonnegative")
    if M > config.max_order:
        raise OrderExceededError(f"M = {M} exceeds configured max order {config.max_order}")
    rec = _ImplicitRecurrence(problem)
    lead = rec.gk(problem.n, 0)
    if abs(lead) < config.singular_tol:
        raise NearSingularError(f"|g_n(x0)| = {abs(lead):.3g} below {config.singular_tol:g}")
    b0 = math.fsum(bj * rec.gk(j, 0) for j, bj in enumerate(problem.initial, start=1))
    stream = DerivativeStream(problem.x0, (b0,) + problem.initial, rec.next_value)
    stream = stream.extend(problem.n + M)
    truncated = sorted({k for g in problem.g for k in g.truncation_hits})
    meta = {"truncated_oracle_orders": truncated} if truncated else {}
    return DerivativeStream(stream.center, stream.values, rec.next_value, meta)


def _stream_from_recursion(center, first: Sequence[float], step, N) -> DerivativeStream:
    vals = [float(v) for v in first[: N + 1]]
    while len(vals) <= N:
        v = step(vals)
        if not math.isfinite(v):
            raise SeriesOverflowError(len(vals))
        vals.append(v)
    return DerivativeStream(center, tuple(vals))


def gaussian_ladder(N: int) -> list:
    """P_1 = 1, P_k = -x P_{k-1} + P_{k-1}'; element ``k-1`` holds P_k."""
    ladder = [Polynomial((1,))]
    for _ in range(2, N + 1):
        p = ladder[-1]
        ladder.append(-p.shift_up() + p.differentiate())
    return ladder


def solve_gaussian_cdf(N: int):
    """Maclaurin series of the standard normal CDF, and the P_k ladder."""
    if N < 2:
        raise ValueError("N must be at least 2")
    ladder = gaussian_ladder(N)
    vals = [0.5]
    for k, p in enumerate(ladder, start=1):
        try:
            vals.append(GAUSS_D * float(p(0)))
        except OverflowError:
            raise SeriesOverflowError(k) from None
    return normalize(DerivativeStream(0.0, tuple(vals))), ladder


def solve_newton_cooling(L: float, Ta: float, c: float, N: int):
    first = [c, L * (c - Ta)]
    stream = _stream_from_recursion(0.0, first, lambda b: L * b[-1], N)
    closed = ClosedFormSolution(
        "T(t) = (c - Ta) exp(L t) + Ta",
        lambda t: (c - Ta) * math.exp(L * t) + Ta,
    )
    return normalize(stream), closed


def solve_harmonic(M: float, c: float, d: float, N: int):
    if not M > 0:
        raise DomainError("harmonic oscillator needs M > 0")
    stream = _stream_from_recursion(0.0, [c, d], lambda b: -M * b[-2], N)
    w = math.sqrt(M)
    closed = ClosedFormSolution(
        "f(t) = c cos(sqrt(M) t) + d/sqrt(M) sin(sqrt(M) t)",
        lambda t: c * math.cos(w * t) + d / w * math.sin(w * t),
    )
    return normalize(stream), closed


_SIN_AT_ZERO = (0.0, 1.0, 0.0, -1.0)


def solve_nonhomogeneous(c: float, d: float, N: int):
    """f'' + f' = -sin(x), f(0) = c, f'(0) = d."""
    # differentiating k-2 times: f^(k) = -f^(k-1) - sin^(k-2)(0)
    step = lambda b: -b[-1] - _SIN_AT_ZERO[(len(b) - 2) % 4]
    stream = _stream_from_recursion(0.0, [c, d], step, N)
    C1 = d - 0.5
    C2 = c + d - 1.0
    closed = ClosedFormSolution(
        "f(x) = C2 + (-2 C1 exp(-x) + cos x + sin x)/2",
        lambda x: C2 + 0.5 * (-2.0 * C1 * math.exp(-x) + math.cos(x) + math.sin(x)),
    )
    return normalize(stream), closed


def eval_ek(k: int, x: float, terms: int = 1, derivative: int = 0) -> float:
    """e_k(x) = sum_{l>=1} x^(lk)/(lk)!, or its ``derivative``-th derivative.

    ``terms`` is a floor on the number of summands; summation continues until
    the next term drops below 1e-16 of the running sum.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    j, r = divmod(derivative, k)
    # e_k^(jk + r) = e_k^(r) + [j >= 1 and r == 0]
    shift = 1.0 if (j >= 1 and r == 0) else 0.0
    if x == 0:
        return shift
    p = k - r
    term = 1.0
    for i in range(1, p + 1):
        term *= x / i
    total = term
    l = 1
    while l < terms or p <= abs(x) or abs(term) > 1e-16 * abs(total):
        for i in range(p + 1, p + k + 1):
            term *= x / i
        p += k
        total += term
        l += 1
    return total + shift


def solve_homogeneous_const(B: float, c: float, d: float, N: int):
    """f'' = (c+d) f' - c d f with f(0) = 0, f'(0) = B."""
    if c == d:
        raise DegenerateProblemError("c and d must differ")
    if not abs(d) < abs(c):
        raise DomainError("requires |d| < |c|")
    s, p = c + d, c * d
    stream = _stream_from_recursion(0.0, [0.0, B], lambda b: s * b[-1] - p * b[-2], N)
    closed = ClosedFormSolution(
        "f(x) = B/(c-d) (exp(c x) - exp(d x))",
        lambda x: B / (c - d) * (math.exp(c * x) - math.exp(d * x)),
    )
    return normalize(stream), closed


H1 = LaurentPolynomial({3: 2})  # h'(x) = 2/x^3


def expinvsq_ladder(K: int) -> list:
    """g_0 = 1, g_{k+1} = g_k' + g_k h' so that f^(k) = f g_k for f = exp(-1/x^2)."""
    ladder = [LaurentPolynomial({0: 1})]
    for _ in range(K):
        g = ladder[-1]
        ladder.append(laurent_differentiate(g) + g * H1)
    return ladder


def expinvsq_derivative_stream(x0: float, K: int, config: SolverConfig = DEFAULT_CONFIG):
    if x0 == 0:
        raise SingularCenterError("exp(-1/x^2) derivatives are taken away from 0")
    if K > config.ladder_cap:
        raise OrderExceededError(
            f"K = {K} exceeds the ladder cap {config.ladder_cap}; use expinvsq_taylor for long expansions"
        )
    ladder = expinvsq_ladder(K)
    u = 1 / Fraction(x0)
    f0 = Fraction(math.exp(-1.0 / (x0 * x0)))

    def value(g, k):
        exact = sum((Fraction(a) * u**m for m, a in g.terms), Fraction(0))
        try:
            return float(f0 * exact)
        except OverflowError:
            raise SeriesOverflowError(k) from None

    def extend(prefix):
        while len(ladder) <= len(prefix):
            g = ladder[-1]
            ladder.append(laurent_differentiate(g) + g * H1)
        return value(ladder[len(prefix)], len(prefix))

    vals = tuple(value(g, k) for k, g in enumerate(ladder))
    return DerivativeStream(float(x0), vals, extend), ladder[: K + 1]


def expinvsq_taylor(x0: float, N: int, self_check: bool | None = None, config: SolverConfig = DEFAULT_CONFIG) -> TaylorSeries:
    """Taylor series of exp(-1/x^2) about ``x0`` via exp of the series of -1/x^2."""
    if N > config.expinvsq_max_order:
        raise OrderExceededError(f"N = {N} exceeds {config.expinvsq_max_order}")
    s = exp_of_series(inverse_square_series(x0, N))
    if config.self_check if self_check is None else self_check:
        K = min(N, config.self_check_order)
        ref = normalize(expinvsq_derivative_stream(x0, K, config)[0])
        for k in range(K + 1):
            a, b = s.coeff(k), ref.coeff(k)
            if abs(a - b) > config.self_check_rtol * max(abs(a), abs(b)):
                raise SelfCheckError(f"coefficient {k}: series route {a!r} vs derivative ladder {b!r}")
    return s


def faa_di_bruno_ladder(k: int) -> LaurentPolynomial:
    """g_k assembled from integer partitions of k (small k only).

    Each partition (n_1 >= ... >= n_r) contributes k!/(prod n_i! prod m_j!)
    h^(n_1)...h^(n_r), with h^(n)(x) = (-1)^(n+1) (n+1)!/x^(n+2).
    """
    if k > 24:
        raise OrderExceededError("partition enumeration is meant for small k")
    total = LaurentPolynomial()  # k = 0 has the single empty partition, giving 1
    for part in _partitions(k):
        mult = partition_multiplicity(part)
        term = LaurentPolynomial({0: mult})
        for n in part:
            term = term * LaurentPolynomial({n + 2: (-1) ** (n + 1) * math.factorial(n + 1)})
        total = total + term
    return total


def partition_multiplicity(part: Sequence[int]) -> int:
    k = sum(part)
    mult = math.factorial(k)
    for n in part:
        mult //= math.factorial(n)
    for n in set(part):
        mult //= math.factorial(list(part).count(n))
    return mult


def _partitions(n, largest=None):
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def ode_residual(kind: str, s: TaylorSeries, **params) -> tuple:
    """Substitute ``s`` into its equation; returns (residual series, term scale).

    The residual is truncated to the orders the truncated series can satisfy
    (k <= N - n). ``term scale`` is the largest coefficient magnitude among the
    terms that were combined, for relative comparisons.
    """
    N = s.order
    d1 = differentiate(s)
    if kind == "gaussian":
        dens = exp_of_series(TaylorSeries(s.center, [0.0, 0.0, -0.5] + [0.0] * max(0, N - 3))) * GAUSS_D
        terms = [d1.truncate(N - 1), dens.truncate(N - 1)]
        res = terms[0] - terms[1]
    elif kind == "newton":
        L, Ta = params["L"], params["Ta"]
        terms = [d1, (s.truncate(N - 1) - Ta) * L]
        res = terms[0] - terms[1]
    elif kind == "harmonic":
        d2 = differentiate(d1)
        terms = [d2, s.truncate(N - 2) * params["M"]]
        res = terms[0] + terms[1]
    elif kind == "nonhomogeneous":
        d2 = differentiate(d1)
        sin = DerivativeOracle.named("sin").taylor(s.center, N - 2)
        terms = [d2, d1.truncate(N - 2), sin]
        res = terms[0] + terms[1] + terms[2]
    elif kind == "homogeneous_const":
        c, d = params["c"], params["d"]
        d2 = differentiate(d1)
        terms = [d2, d1.truncate(N - 2) * (c + d), s.truncate(N - 2) * (c * d)]
        res = terms[0] - terms[1] + terms[2]
    elif kind == "theorem1":
        problem: LinearImplicitODE = params["problem"]
        n = problem.n
        keep = N - n
        acc = s.truncate(keep)
        terms = [acc]
        deriv = s
        for j, g in enumerate(problem.g, start=1):
            deriv = differentiate(deriv)
            gs = g.taylor(s.center, keep)
            t = cauchy_product(gs, deriv.truncate(keep))
            terms.append(t)
            acc = acc - t
        res = acc
    else:
        raise ValueError(f"no residual for problem kind {kind!r}")
    scale = max(float(np.max(np.abs(t.coeffs))) for t in terms)
    return res, scale
