import ast
import math
from pathlib import Path

import numpy as np
import pytest

import taylor_forge
from taylor_forge import reference
from taylor_forge.errors import DomainError

EXPECTED = {
    "normal_cdf", "exp_sum", "exp_product", "geometric", "geometric2", "sincos",
    "expinvsq", "newton", "harmonic", "nonhomogeneous", "homogeneous_const",
}


def test_all_oracles_self_certified():
    # registration raises on disagreement, so presence means certified
    assert EXPECTED <= set(reference.REGISTRY)


def test_solver_modules_do_not_import_reference():
    pkg = Path(taylor_forge.__file__).parent
    for name in ("series", "jets", "ode", "radius", "multivar", "problems"):
        tree = ast.parse((pkg / f"{name}.py").read_text())
        for node in ast.walk(tree):
            if isinstance(node, ast.ImportFrom):
                assert node.module != "reference" and "reference" not in [a.name for a in node.names], name


@pytest.mark.parametrize("x, expected, tol", [(0, 0.5, 0), (1.0, 0.8413447, 5e-8), (-2.8, 0.0025551, 5e-8)])
def test_normal_cdf_examples(x, expected, tol):
    assert abs(reference.normal_cdf_reference(x) - expected) <= tol


def test_normal_cdf_frozen(frozen):
    for x, v in frozen["normal_cdf"].items():
        assert reference.normal_cdf_reference(float(x)) == pytest.approx(v, abs=1e-13)


@pytest.mark.parametrize("x", np.linspace(-8, 8, 50))
def test_normal_cdf_symmetry(x):
    assert abs(reference.normal_cdf_reference(x) + reference.normal_cdf_reference(-x) - 1) <= 1e-12


def test_normal_cdf_domain():
    with pytest.raises(DomainError):
        reference.normal_cdf_reference(8.5)


@pytest.mark.parametrize(
    "name, point, expected, tol",
    [("exp_sum", (0, 0), 1.0, 0), ("expinvsq", (1,), 0.367879, 1e-6), ("geometric2", (0.3, 0.2), 2.0, 1e-15)],
)
def test_closed_form_examples(name, point, expected, tol):
    assert abs(reference.closed_form(name, *point) - expected) <= tol


def test_closed_form_errors():
    with pytest.raises(KeyError):
        reference.closed_form("nope", 1.0)
    with pytest.raises(DomainError):
        reference.closed_form("geometric2", (0.5, 0.5))


def test_finite_difference_examples():
    assert abs(reference.finite_difference_jet(math.exp, 0.0, 2) - 1) <= 1e-6
    f = lambda x: reference.closed_form("expinvsq", x)
    assert abs(reference.finite_difference_jet(f, 1.0, 1) - 2 / math.e) <= 1e-5
    g = lambda x: reference.closed_form("sincos", x, math.pi / 2)
    assert abs(reference.finite_difference_jet(g, 0.0, 1)) <= 1e-6


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_finite_difference_orders(k):
    # derivatives of exp at 0.3 are all exp(0.3)
    assert reference.finite_difference_jet(math.exp, 0.3, k) == pytest.approx(math.exp(0.3), rel=1e-5)


def test_finite_difference_order_guard():
    with pytest.raises(ValueError):
        reference.finite_difference_jet(math.exp, 0.0, 5)
