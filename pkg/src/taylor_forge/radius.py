"""Cauchy-Hadamard radius estimates, 1/r = limsup |c_k|^(1/k), done in the log domain."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DomainError, InsufficientCoefficientsError, OrderExceededError
from .series import TaylorSeries

INFINITE_RADIUS_THRESHOLD = 1e-2


class RootPoint(NamedTuple):
    index: int
    value: float
    exact_zero: bool = False


@dataclass(frozen=True)
class RadiusEstimate:
    checkpoints: tuple
    tail_estimate: float
    window: int
    radius: float

    @property
    def infinite(self) -> bool:
        return math.isinf(self.radius)

    def as_dict(self) -> dict:
        return {
            "checkpoints": [[p.index, p.value] for p in self.checkpoints],
            "tail_estimate": self.tail_estimate,
            "window": self.window,
            "radius": "inf" if self.infinite else self.radius,
        }


def root_value(s: TaylorSeries, n: int) -> RootPoint:
    if n < 1:
        raise ValueError("root values are defined for n >= 1")
    if n > s.order:
        raise OrderExceededError(f"index {n} beyond series order {s.order}")
    la = s.log_abs_coeff(n)
    if la == -math.inf:
        return RootPoint(n, 0.0, True)
    return RootPoint(n, math.exp(la / n))


def root_sequence(s: TaylorSeries, indices: Iterable[int]) -> list:
    """|c_n|^(1/n) at each index; exact-zero coefficients give value 0."""
    return [root_value(s, int(n)) for n in indices]


def default_window(order: int) -> int:
    return max(32, order // 8)


def estimate_radius(s: TaylorSeries, window: int | None = None) -> RadiusEstimate:
    """Max of |c_n|^(1/n) over the last ``window`` nonzero coefficients.

    Reports an infinite radius when every tail coefficient is zero, or when
    the tail estimate is below 1e-2 and the root values fall across the window.
    """
    window = default_window(s.order) if window is None else int(window)
    if window < 1:
        raise ValueError("window must be positive")
    if s.order < window:
        raise InsufficientCoefficientsError(f"order {s.order} is below the window {window}")
    nonzero = np.flatnonzero(s.coeffs[1:]) + 1
    tail = nonzero[-window:]
    if tail.size == 0:
        return RadiusEstimate((), 0.0, window, math.inf)
    points = tuple(root_value(s, int(n)) for n in tail)
    est = max(p.value for p in points)
    falling = len(points) > 1 and points[-1].value < points[0].value
    if est == 0.0 or (est < INFINITE_RADIUS_THRESHOLD and falling):
        radius = math.inf
    else:
        radius = 1.0 / est
    return RadiusEstimate(points, est, window, radius)


def log_series(a: float, N: int, scale: float | None = None) -> TaylorSeries:
    """Maclaurin series of ln(a + x): c_0 = ln a, c_k = (-1)^(k+1)/(k a^k).

    Stored for t = x/a by default so long expansions do not over/underflow.
    """
    if not a > 0:
        raise DomainError("ln(a + x) needs a > 0")
    s = a if scale is None else float(scale)
    k = np.arange(1, N + 1)
    ratio = s / a
    with np.errstate(over="ignore", under="ignore"):
        tail = (-1.0) ** (k + 1) * ratio ** k.astype(float) / k
    return TaylorSeries(0.0, np.concatenate([[math.log(a)], tail]), s)


def diagonal_log_coefficient(dim: int, k: int) -> float:
    """log C_(k,...,k) for 1/(1 - x_1 - ... - x_dim): log((dim k)!/(k!)^dim)."""
    return math.lgamma(dim * k + 1) - dim * math.lgamma(k + 1)


def multivariate_diagonal_sequence(dim: int, ks: Iterable[int]) -> list:
    """(k, |C_(k..k)|^(1/(dim k))) for the geometric family, via log-gamma."""
    ks = [int(k) for k in ks]
    if dim not in (2, 3, 4):
        raise DomainError("dimension must be 2, 3 or 4")
    if any(k < 1 for k in ks):
        raise ValueError("k must be positive")
    if ks and dim * max(ks) > 10000:
        raise DomainError("dim * k must not exceed 10000")
    return [(k, math.exp(diagonal_log_coefficient(dim, k) / (dim * k))) for k in ks]
