import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taylor_forge.errors import CenterMismatchError, OrderExceededError, SeriesOverflowError, SingularCenterError
from taylor_forge.ode import GAUSS_D, solve_gaussian_cdf
from taylor_forge.series import (
    DerivativeStream,
    LaurentPolynomial,
    Polynomial,
    TaylorSeries,
    antiderivative,
    cauchy_product,
    denormalize,
    differentiate,
    eval_partial_sum,
    exp_of_series,
    exp_series,
    inverse_square_series,
    laurent_differentiate,
    normalize,
    pascal_row,
    rescale,
)

EXP5 = [1, 1, 1 / 2, 1 / 6, 1 / 24, 1 / 120]
small = st.floats(-1, 1, allow_nan=False).filter(lambda v: v == 0 or abs(v) > 1e-200)


def test_construction_rejects_nonfinite():
    with pytest.raises(SeriesOverflowError):
        TaylorSeries(0.0, [1.0, math.inf])
    with pytest.raises(ValueError):
        TaylorSeries(0.0, [])


def test_coeffs_are_read_only():
    s = TaylorSeries(0.0, [1.0, 2.0])
    with pytest.raises(ValueError):
        s.coeffs[0] = 3.0


@pytest.mark.parametrize("x", [-3.0, 0.0, 0.7, 12.0])
def test_constant_series_partial_sum(x):
    assert eval_partial_sum(TaylorSeries(1.0, [4.25]), x, 0) == 4.25


def test_partial_sum_order_guard():
    with pytest.raises(OrderExceededError):
        eval_partial_sum(TaylorSeries(0.0, [1.0, 1.0]), 0.1, 2)


def test_gaussian_partial_sum_examples():
    s, _ = solve_gaussian_cdf(30)
    assert eval_partial_sum(s, 0.0, 17) == 0.5
    assert abs(eval_partial_sum(s, -4.0, 10) - (-17.860)) <= 5e-3


@pytest.mark.parametrize(
    "coeffs, expected",
    [
        (EXP5[:4], EXP5[:3]),
        ([0, 1], [1]),
        ([0, 0, 0, 0, 1 / 24], [0, 0, 0, 1 / 6]),
        ([7.0], [0.0]),
    ],
)
def test_differentiate(coeffs, expected):
    d = differentiate(TaylorSeries(0.0, coeffs))
    np.testing.assert_allclose(d.coeffs, expected, rtol=0, atol=1e-16)


@given(st.lists(small, min_size=2, max_size=40), st.floats(0.25, 8))
def test_antiderivative_inverts_differentiate(coeffs, scale):
    s = TaylorSeries(0.5, coeffs, scale)
    back = differentiate(antiderivative(s, constant=3.0))
    np.testing.assert_allclose(back.coeffs, s.coeffs, rtol=1e-15, atol=0)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ([1, 1], [1, 1], [1, 2]),
        (EXP5[:5], EXP5[:5], [2**k / math.factorial(k) for k in range(5)]),
        ([3, 1, 4], [0, 0, 0], [0, 0, 0]),
    ],
)
def test_cauchy_product(a, b, expected):
    p = cauchy_product(TaylorSeries(0.0, a), TaylorSeries(0.0, b))
    np.testing.assert_allclose(p.coeffs, expected, rtol=1e-15)


def test_cauchy_product_center_mismatch():
    with pytest.raises(CenterMismatchError):
        cauchy_product(TaylorSeries(0.0, [1]), TaylorSeries(1.0, [1]))


def test_operators_align_scales():
    a = exp_series(10, scale=1.0)
    b = exp_series(10, scale=3.0)
    np.testing.assert_allclose([(a + b).coeff(k) for k in range(11)], [2 / math.factorial(k) for k in range(11)], rtol=1e-14)


def test_exp_of_series_examples():
    assert exp_of_series(TaylorSeries(0.0, [0.0])).coeffs.tolist() == [1.0]
    f = exp_of_series(TaylorSeries(0.0, [0.0, 1.0] + [0.0] * 5))
    np.testing.assert_allclose(f.coeffs, [1 / math.factorial(k) for k in range(7)], rtol=1e-15)
    g = exp_of_series(inverse_square_series(1.0, 20))
    assert abs(eval_partial_sum(g, 0.6, 20) - 0.062176) <= 1e-6


def _absolute(s):
    return TaylorSeries(s.center, np.abs(s.coeffs), s.scale)


@settings(max_examples=60)
@given(st.lists(small, min_size=31, max_size=31), st.lists(small, min_size=31, max_size=31))
def test_exp_of_series_homomorphism(h1, h2):
    a, b = TaylorSeries(0.0, h1), TaylorSeries(0.0, h2)
    lhs = exp_of_series(a + b).coeffs
    rhs = cauchy_product(exp_of_series(a), exp_of_series(b)).coeffs
    # relative per coefficient, measured against the size of the terms being combined
    size = cauchy_product(exp_of_series(_absolute(a)), exp_of_series(_absolute(b))).coeffs
    assert np.all(np.abs(lhs - rhs) <= 1e-12 * np.maximum(np.abs(rhs), size))


@pytest.mark.parametrize("x0", [1.0, 2.0, -0.7, 3.5])
def test_exp_of_inverse_square_at_center(x0):
    s = exp_of_series(inverse_square_series(x0, 40))
    assert eval_partial_sum(s, x0, 0) == math.exp(-1 / x0**2)
    for n in (1, 7, 40):
        assert abs(eval_partial_sum(s, x0, n) - math.exp(-1 / x0**2)) <= 1e-15


@pytest.mark.parametrize("x0, k, expected", [(1.0, 0, -1.0), (1.0, 1, 2.0), (1.0, 2, -3.0), (2.0, 0, -0.25), (2.0, 3, 4 / 2**5)])
def test_inverse_square_coefficients(x0, k, expected):
    assert inverse_square_series(x0, 5).coeff(k) == pytest.approx(expected, rel=1e-15)


def test_inverse_square_singular():
    with pytest.raises(SingularCenterError):
        inverse_square_series(0.0, 3)


@pytest.mark.parametrize(
    "p, expected",
    [({3: 2}, {4: -6}), ({0: 5}, {}), ({2: -1}, {3: 2})],
)
def test_laurent_differentiate(p, expected):
    assert laurent_differentiate(LaurentPolynomial(p)).coeffs == expected


def test_laurent_invariants():
    p = LaurentPolynomial({1: 2, 2: 0}) + LaurentPolynomial({1: -2})
    assert not p and p.terms == ()
    with pytest.raises(ValueError):
        LaurentPolynomial({-1: 1})
    assert LaurentPolynomial({3: 2}).at_x(2) == 0.25


def test_polynomial_zero_is_empty():
    assert Polynomial((0, 0)).coeffs == ()
    assert (Polynomial((1, 2)) - Polynomial((1, 2))).coeffs == ()
    assert Polynomial((1, 0, 3))(2) == 13


def test_normalize_examples():
    s = normalize(DerivativeStream(0.0, (1.0,) * 12))
    assert s.coeffs.tolist() == [1 / math.factorial(k) for k in range(12)]
    b = denormalize(TaylorSeries(0.0, [0.5, GAUSS_D]))
    assert b.values == (0.5, GAUSS_D)
    gauss, _ = solve_gaussian_cdf(6)
    assert gauss.coeffs[5] == pytest.approx(3 * GAUSS_D / 120, rel=1e-15)


def _ulps(a, b):
    return abs(a - b) / max(math.ulp(a), math.ulp(b)) if a != b else 0


# b_k/k! must stay a normal double for the ulp bound to mean anything, hence |b_k| >= 1
@settings(max_examples=30)
@given(st.lists(st.one_of(st.just(0.0), st.floats(1, 1e6), st.floats(-1e6, -1)), min_size=171, max_size=171))
def test_normalize_round_trip_4ulp(vals):
    b = DerivativeStream(0.3, tuple(vals))
    back = denormalize(normalize(b)).values
    assert max(_ulps(x, y) for x, y in zip(vals, back)) <= 4


def test_normalize_division_is_exact():
    c = normalize(DerivativeStream(0.0, (1.0,) * 30)).coeffs
    for k in range(30):
        assert c[k] == float(Fraction(1, math.factorial(k)))


def test_denormalize_overflow_names_index():
    with pytest.raises(SeriesOverflowError) as exc:
        denormalize(TaylorSeries(0.0, [1.0] * 200))
    assert exc.value.index == 171


def test_extend_reports_overflow():
    s = DerivativeStream(0.0, (1.0,), lambda p: p[-1] * 1e300)
    with pytest.raises(SeriesOverflowError):
        s.extend(5)


@settings(max_examples=50)
@given(st.lists(small, min_size=1, max_size=101), st.floats(-4, 4), st.floats(-2, 2))
def test_horner_matches_naive(coeffs, dx, x0):
    s = TaylorSeries(x0, coeffs)
    x = x0 + dx
    dx = x - x0  # the offset Horner actually sees
    n = s.order
    naive = math.fsum(c * dx**k for k, c in enumerate(coeffs))
    cond = math.fsum(abs(c) * abs(dx) ** k for k, c in enumerate(coeffs))
    # relative to the condition scale: cancellation makes the value itself arbitrarily small
    assert abs(eval_partial_sum(s, x, n) - naive) <= 1e-13 * cond


@given(st.floats(0.1, 10), st.floats(0.1, 10))
def test_rescale_preserves_value(s1, s2):
    s = TaylorSeries(0.0, [1.0, -0.5, 0.25, 0.125], s1)
    r = rescale(s, s2)
    assert r(0.3) == pytest.approx(s(0.3), rel=1e-13)
    assert r.coeff(2) == pytest.approx(s.coeff(2), rel=1e-13)


@pytest.mark.parametrize("m", [0, 1, 10, 60, 200])
def test_pascal_row_exact(m):
    row = pascal_row(m)
    assert row == tuple(float(math.comb(m, k)) for k in range(m + 1))
    if m <= 55:  # every entry is an exact integer in a double
        assert all(int(v) == math.comb(m, k) for k, v in enumerate(row))
