import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taylor_forge.errors import DomainError, InsufficientCoefficientsError, OrderExceededError
from taylor_forge.ode import expinvsq_taylor, solve_harmonic
from taylor_forge.radius import (
    diagonal_log_coefficient,
    estimate_radius,
    log_series,
    multivariate_diagonal_sequence,
    root_sequence,
)
from taylor_forge.series import TaylorSeries, exp_series


@pytest.fixture(scope="module")
def long_expinvsq():
    return {x0: expinvsq_taylor(x0, 2000) for x0 in (1.0, 2.0)}


@pytest.mark.parametrize("x0, n, expected", [(1.0, 1000, 1.0865), (2.0, 2000, 0.5219)])
def test_root_sequence_examples(long_expinvsq, x0, n, expected):
    (p,) = root_sequence(long_expinvsq[x0], [n])
    assert abs(p.value - expected) <= 2e-3


@pytest.mark.parametrize("x0", [1, 2])
def test_root_sequence_against_high_precision(long_expinvsq, frozen, x0):
    ref = frozen[f"expinvsq_root_{x0}"]
    for p in root_sequence(long_expinvsq[float(x0)], [int(n) for n in ref]):
        assert p.value == pytest.approx(ref[str(p.index)], rel=1e-10)


def test_root_of_unit_coefficients_is_one():
    s = TaylorSeries(0.0, np.ones(60))
    assert all(p.value == 1.0 for p in root_sequence(s, range(1, 60)))


def test_root_sequence_zero_and_range():
    s = TaylorSeries(0.0, [1.0, 0.0, 4.0])
    zero, two = root_sequence(s, [1, 2])
    assert zero.exact_zero and zero.value == 0.0
    assert two.value == 2.0
    with pytest.raises(OrderExceededError):
        root_sequence(s, [3])


def test_log_series_radius_example():
    assert abs(estimate_radius(log_series(3.0, 500)).radius - 3) <= 0.05


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 3.0])
def test_log_series_radius_within_two_percent(a):
    assert estimate_radius(log_series(a, 2000)).radius == pytest.approx(a, rel=0.02)


def test_exp_has_infinite_radius():
    est = estimate_radius(exp_series(500))
    assert est.infinite and est.tail_estimate < 1e-2


def test_expinvsq_radius(long_expinvsq):
    est = estimate_radius(long_expinvsq[1.0])
    assert abs(est.radius - 0.93) <= 0.03
    assert est.radius == pytest.approx(1 / 1.0714, abs=0.03)


@pytest.mark.parametrize("a, k, expected", [(1.0, 1, 1.0), (1.0, 2, -0.5), (2.0, 3, 1 / 24), (1.0, 0, 0.0)])
def test_log_series_coefficients(a, k, expected):
    assert log_series(a, 5).coeff(k) == pytest.approx(expected, rel=1e-15, abs=0)


def test_log_series_domain():
    with pytest.raises(DomainError):
        log_series(0.0, 5)


def test_window_guard():
    with pytest.raises(InsufficientCoefficientsError):
        estimate_radius(TaylorSeries(0.0, np.ones(20)))
    with pytest.raises(ValueError):
        estimate_radius(TaylorSeries(0.0, np.ones(20)), window=0)


def test_default_window():
    assert estimate_radius(log_series(1.0, 800)).window == 100
    assert estimate_radius(log_series(1.0, 100)).window == 32


@settings(max_examples=40)
@given(st.floats(0.05, 20), st.integers(40, 200))
def test_scale_covariance(s, N):
    rng = np.random.default_rng(N)
    c = rng.uniform(0.5, 2.0, N + 1) * rng.choice([-1, 1], N + 1)
    base = TaylorSeries(0.0, c)
    # the same coefficients times s^k, carried by the scale field
    scaled = TaylorSeries(0.0, c, 1 / s)
    a, b = estimate_radius(base), estimate_radius(scaled)
    assert b.radius == pytest.approx(a.radius / s, rel=1e-10)
    for p, q in zip(root_sequence(base, range(1, N + 1)), root_sequence(scaled, range(1, N + 1))):
        assert q.value == pytest.approx(p.value * s, rel=1e-10)


def test_scale_covariance_explicit_coefficients():
    s = 1.7
    c = log_series(1.0, 120).coeffs
    k = np.arange(121)
    a = estimate_radius(TaylorSeries(0.0, c))
    b = estimate_radius(TaylorSeries(0.0, c * s**k))
    assert b.radius == pytest.approx(a.radius / s, rel=1e-10)


def test_zero_safety_cosine():
    s, _ = solve_harmonic(1.0, 1.0, 0.0, 120)
    est = estimate_radius(s)
    assert math.isfinite(est.radius) and est.radius > 0
    assert all(p.index % 2 == 0 for p in est.checkpoints)
    assert all(math.isfinite(p.value) and p.value >= 0 for p in est.checkpoints)


def test_all_zero_tail_is_infinite():
    est = estimate_radius(TaylorSeries(0.0, [1.0] + [0.0] * 40))
    assert est.infinite and est.checkpoints == ()


@pytest.mark.parametrize("dim, k, expected", [(3, 10, 2.6596), (4, 1000, 3.9876), (3, 50, 2.8977)])
def test_diagonal_examples(dim, k, expected):
    ((_, v),) = multivariate_diagonal_sequence(dim, [k])
    assert abs(v - expected) <= 2e-4


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_diagonal_monotone_and_bounded(dim):
    ks = range(1, 2001) if dim < 4 else range(1, 2501)
    vals = [v for _, v in multivariate_diagonal_sequence(dim, ks)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert max(vals) < dim


def test_diagonal_guards():
    with pytest.raises(DomainError):
        multivariate_diagonal_sequence(5, [3])
    with pytest.raises(DomainError):
        multivariate_diagonal_sequence(4, [2501])


@pytest.mark.parametrize("dim, k", [(2, 7), (3, 50), (4, 33)])
def test_diagonal_log_is_exact(dim, k):
    exact = math.log(math.factorial(dim * k) // math.factorial(k) ** dim)
    assert diagonal_log_coefficient(dim, k) == pytest.approx(exact, rel=1e-13)
