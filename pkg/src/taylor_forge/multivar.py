"""Multivariate Taylor expansions for the PDE examples.

Coefficients are kept in a sparse map from multi-index (a tuple of
nonnegative ints) to C_alpha, the mixed partial divided by prod(alpha_i!).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from scipy import integrate

from .errors import CenterMismatchError, DegenerateProblemError, DomainError, OrderExceededError
from .jets import DerivativeOracle
from .ode import ClosedFormSolution
from .series import TaylorSeries, eval_partial_sum, pascal_row

MultiIndex = tuple


def size(alpha: MultiIndex) -> int:
    return sum(alpha)


@dataclass(frozen=True, eq=False)
class MultiTaylor:
    center: tuple
    coeffs: Mapping
    max_total_degree: int

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        d = len(self.center)
        if d < 1:
            raise ValueError("need at least one variable")
        for alpha, v in self.coeffs.items():
            if len(alpha) != d or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha} for dimension {d}")
            if size(alpha) > self.max_total_degree:
                raise ValueError(f"multi-index {alpha} exceeds total degree {self.max_total_degree}")
            if not math.isfinite(v):
                raise ValueError(f"non-finite coefficient at {alpha}")

    @property
    def dim(self) -> int:
        return len(self.center)

    def coeff(self, alpha: MultiIndex) -> float:
        return self.coeffs.get(tuple(alpha), 0.0)

    def partial(self, alpha: MultiIndex) -> float:
        """The mixed partial derivative at the center, C_alpha * prod(alpha_i!)."""
        return self.coeff(alpha) * math.prod(math.factorial(a) for a in alpha)


def _indices(N: int, dim: int = 2):
    """Multi-indices of total degree <= N, grouped by increasing degree."""
    for n in range(N + 1):
        yield from _compositions(n, dim)


def _compositions(n, dim):
    if dim == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, dim - 1):
            yield (first,) + rest


def pde_exp_sum(N: int) -> MultiTaylor:
    """f_x = f_y = f, f(0,0) = 1: C_jk = 1/(j! k!)."""
    coeffs = {(j, k): 1.0 / (math.factorial(j) * math.factorial(k)) for j, k in _indices(N)}
    return MultiTaylor((0.0, 0.0), coeffs, N)


def pde_exp_product(N: int) -> MultiTaylor:
    """f_x = y f, f_y = x f, f(0,0) = 1: only the diagonal C_jj = 1/j! survives."""
    coeffs = {(j, j): 1.0 / math.factorial(j) for j in range(N // 2 + 1)}
    return MultiTaylor((0.0, 0.0), coeffs, N)


def pde_geometric(N: int, dim: int = 2) -> MultiTaylor:
    """f_{x_i} = f^2, f(0) = 1: C_alpha = |alpha|!/prod(alpha_i!) by Pascal's rule."""
    coeffs = {(0,) * dim: 1.0}
    for alpha in _indices(N, dim):
        if size(alpha) == 0:
            continue
        total = 0.0
        for i, a in enumerate(alpha):
            if a:
                total += coeffs[alpha[:i] + (a - 1,) + alpha[i + 1 :]]
        coeffs[alpha] = total
    return MultiTaylor((0.0,) * dim, coeffs, N)


def eval_multitaylor(m: MultiTaylor, point: Sequence[float], total_degree: int | None = None) -> float:
    deg = m.max_total_degree if total_degree is None else total_degree
    if deg > m.max_total_degree:
        raise OrderExceededError(f"degree {deg} exceeds stored degree {m.max_total_degree}")
    if len(point) != m.dim:
        raise ValueError("point has the wrong dimension")
    dx = [p - c for p, c in zip(point, m.center)]
    by_degree = sorted((size(a), a, v) for a, v in m.coeffs.items() if size(a) <= deg)
    total = 0.0
    for _, alpha, v in by_degree:
        term = v
        for x, a in zip(dx, alpha):
            if a:
                term *= x**a
        total += term
    return total


def eval_tensor_partial_sum(m: MultiTaylor, point: Sequence[float], per_axis: int) -> float:
    """Sum over alpha with every alpha_i <= per_axis (a box, not a simplex)."""
    if per_axis * m.dim > m.max_total_degree:
        raise OrderExceededError("series does not store the full box of coefficients")
    dx = [p - c for p, c in zip(point, m.center)]
    total = 0.0
    for alpha in product(range(per_axis + 1), repeat=m.dim):
        v = m.coeff(alpha)
        if v:
            total += v * math.prod(x**a for x, a in zip(dx, alpha))
    return total


def advection_residual(g_series: TaylorSeries, center, grid, step: float = 1e-5) -> float:
    """max |f_x - f_y| over ``grid`` for f(x, y) = g(x + y), by central differences.

    A verifier, not a solver: any smooth g gives a solution of f_x = f_y.
    """
    x0, y0 = center
    z0 = x0 + y0
    if g_series.center != z0:
        raise CenterMismatchError(f"g is centered at {g_series.center}, expected x0 + y0 = {z0}")
    f = lambda x, y: eval_partial_sum(g_series, x + y, g_series.order)
    worst = 0.0
    for x, y in grid:
        if abs(x + y - z0) > 1.0:
            raise DomainError(f"({x}, {y}) lies outside the trust region |x + y - z0| <= 1")
        fx = (f(x + step, y) - f(x - step, y)) / (2 * step)
        fy = (f(x, y + step) - f(x, y - step)) / (2 * step)
        worst = max(worst, abs(fx - fy))
    return worst


@dataclass(frozen=True, eq=False)
class SeparablePDEProblem:
    """f_x = g(x) f, f_y = h(y) f with f(x0, y0) = C."""

    g_oracle: DerivativeOracle
    h_oracle: DerivativeOracle
    center: tuple
    C: float = 1.0


def separable_stream(oracle: DerivativeOracle, x0: float, C: float, N: int) -> list:
    """b_0 = C, b_{n+1} = sum_k C(n,k) g^(n-k)(x0) b_k."""
    gd = [oracle.derivative(k, x0) for k in range(N)]
    b = [float(C)]
    for n in range(N):
        row = pascal_row(n)
        b.append(math.fsum(row[k] * gd[n - k] * b[k] for k in range(n + 1)))
    return b


def lemma5_solve(problem: SeparablePDEProblem, N: int):
    """Bivariate series and closed form C exp(int g) exp(int h).

    The mixed partials factor as f_{x^j y^k} = f_{x^j} f_{y^k} / C at the
    center, so C_jk = (bx_j/j!) (by_k/k!) / C.
    """
    C = float(problem.C)
    if C == 0:
        raise DegenerateProblemError("C = 0 gives the zero solution; the factorization divides by C")
    x0, y0 = problem.center
    bx = separable_stream(problem.g_oracle, x0, C, N)
    by = separable_stream(problem.h_oracle, y0, C, N)
    fact = [float(math.factorial(i)) for i in range(N + 1)]
    coeffs = {}
    for j, k in _indices(N):
        v = (bx[j] / fact[j]) * (by[k] / fact[k]) / C
        if v != 0.0:
            coeffs[(j, k)] = v
    m = MultiTaylor((x0, y0), coeffs, N)

    def closed(x, y):
        ix = integrate.quad(problem.g_oracle, x0, x, epsabs=1e-13, epsrel=1e-12)[0]
        iy = integrate.quad(problem.h_oracle, y0, y, epsabs=1e-13, epsrel=1e-12)[0]
        return C * math.exp(ix) * math.exp(iy)

    return m, ClosedFormSolution("C exp(int_x0^x g) exp(int_y0^y h)", closed)


def example_423_p4(x: float, y: float) -> float:
    """Fourth-order product polynomial for g = sin, h = cos about (0, pi/2)."""
    v = y - math.pi / 2
    return (1 + x**2 / 2 + x**4 / 12) * (1 - v**2 / 2 + v**4 / 6)
