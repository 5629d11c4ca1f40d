"""JSON problem descriptors: validation and solution documents."""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import ode
from .errors import DescriptorError, NumericFailure
from .jets import DerivativeOracle
from .multivar import (
    SeparablePDEProblem,
    eval_multitaylor,
    lemma5_solve,
    pde_exp_product,
    pde_exp_sum,
    pde_geometric,
)
from .radius import estimate_radius, log_series, root_sequence
from .series import TaylorSeries, exp_series, normalize

UNIVARIATE = ("theorem1", "gaussian", "newton", "harmonic", "nonhomogeneous", "homogeneous_const", "expinvsq", "log", "exp")
MULTIVARIATE = ("exp_sum", "exp_product", "geometric", "lemma5")

# required params and defaults per univariate type
_PARAMS = {
    "gaussian": {},
    "newton": {"L": None, "Ta": None, "c": None},
    "harmonic": {"M": None, "c": None, "d": None},
    "nonhomogeneous": {"c": None, "d": None},
    "homogeneous_const": {"B": None, "c": None, "d": None},
    "expinvsq": {},
    "log": {"a": None},
    "exp": {},
    "theorem1": {"initial": []},
}


def load_descriptor(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")  # OSError propagates to the CLI as an I/O failure
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError("<root>", f"invalid JSON: {exc}") from None
    return validate(d)


def _number(d, key, where, default=None):
    v = d.get(key, default)
    if v is None:
        raise DescriptorError(where, f"missing required number {key!r}")
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise DescriptorError(f"{where}.{key}" if where != "<root>" else key, f"expected a finite number, got {v!r}")
    return float(v)


def validate(d) -> dict:
    if not isinstance(d, dict):
        raise DescriptorError("<root>", "descriptor must be a JSON object")
    kind = d.get("type")
    if kind not in UNIVARIATE + MULTIVARIATE:
        raise DescriptorError("type", f"unknown problem type {kind!r}; expected one of {UNIVARIATE + MULTIVARIATE}")
    out = dict(d)
    order_key = "degree" if kind in MULTIVARIATE else "order"
    order = d.get(order_key, d.get("order", 20))
    if isinstance(order, bool) or not isinstance(order, int) or order < 1:
        raise DescriptorError(order_key, f"expected a positive integer, got {order!r}")
    out["order"] = order
    if kind in MULTIVARIATE:
        center = d.get("center", [0.0, 0.0])
        if not isinstance(center, list) or len(center) != 2 or not all(isinstance(c, (int, float)) for c in center):
            raise DescriptorError("center", "expected [x0, y0]")
        out["center"] = [float(c) for c in center]
        if kind == "lemma5":
            for key in ("g", "h"):
                if key not in d:
                    raise DescriptorError(key, "lemma5 needs an oracle descriptor")
                DerivativeOracle.from_descriptor(d[key], key)
            out["C"] = _number(d, "C", "<root>", 1.0)
        return out
    out["x0"] = _number(d, "x0", "<root>", 0.0)
    params = d.get("params", {})
    if not isinstance(params, dict):
        raise DescriptorError("params", "expected an object")
    clean = {}
    for key, default in _PARAMS[kind].items():
        if key == "initial":
            init = params.get("initial", default)
            if not isinstance(init, list) or not all(isinstance(v, (int, float)) for v in init):
                raise DescriptorError("params.initial", "expected a list of numbers")
            clean["initial"] = [float(v) for v in init]
        else:
            clean[key] = _number(params, key, "params", default)
    out["params"] = clean
    if kind == "theorem1":
        g = d.get("g")
        if not isinstance(g, list) or not g:
            raise DescriptorError("g", "theorem1 needs a non-empty list of oracle descriptors")
        for i, item in enumerate(g):
            DerivativeOracle.from_descriptor(item, f"g[{i}]")
        if clean["initial"] and len(clean["initial"]) != len(g):
            raise DescriptorError("params.initial", f"expected {len(g)} values, got {len(clean['initial'])}")
    if kind == "expinvsq" and out["x0"] == 0:
        raise DescriptorError("x0", "exp(-1/x^2) cannot be expanded about 0")
    return out


def build_theorem1(d) -> ode.LinearImplicitODE:
    g = [DerivativeOracle.from_descriptor(item, f"g[{i}]") for i, item in enumerate(d["g"])]
    initial = d["params"]["initial"] or [0.0] * len(g)
    return ode.LinearImplicitODE(g, d["x0"], initial)


def build_univariate(d):
    """Return (series, closed form or None, residual kind, residual params)."""
    kind, N, p, x0 = d["type"], d["order"], d["params"], d["x0"]
    if kind == "theorem1":
        problem = build_theorem1(d)
        M = max(N - problem.n, 0)
        stream = ode.theorem1_extend(problem, M)
        s = normalize(stream).truncate(N) if len(stream) > N else normalize(stream)
        return s, None, ("theorem1", {"problem": problem}), stream.metadata
    if kind == "gaussian":
        s, _ = ode.solve_gaussian_cdf(N)
        return s, None, ("gaussian", {}), {}
    if kind == "newton":
        s, cf = ode.solve_newton_cooling(p["L"], p["Ta"], p["c"], N)
        return s, cf, ("newton", {"L": p["L"], "Ta": p["Ta"]}), {}
    if kind == "harmonic":
        s, cf = ode.solve_harmonic(p["M"], p["c"], p["d"], N)
        return s, cf, ("harmonic", {"M": p["M"]}), {}
    if kind == "nonhomogeneous":
        s, cf = ode.solve_nonhomogeneous(p["c"], p["d"], N)
        return s, cf, ("nonhomogeneous", {}), {}
    if kind == "homogeneous_const":
        s, cf = ode.solve_homogeneous_const(p["B"], p["c"], p["d"], N)
        return s, cf, ("homogeneous_const", {"c": p["c"], "d": p["d"]}), {}
    if kind == "expinvsq":
        s = ode.expinvsq_taylor(x0, N)
        cf = ode.ClosedFormSolution("exp(-1/x^2)", lambda x: math.exp(-1.0 / (x * x)) if x else 0.0)
        return s, cf, None, {}
    if kind == "log":
        s = log_series(p["a"], N)
        return s, ode.ClosedFormSolution("ln(a + x)", lambda x: math.log(p["a"] + x)), None, {}
    s = exp_series(N, center=x0)
    return s, ode.ClosedFormSolution("exp(x - x0)", lambda x: math.exp(x - x0)), None, {}


def build_multivariate(d):
    kind, N = d["type"], d["order"]
    if kind == "exp_sum":
        return pde_exp_sum(N), ode.ClosedFormSolution("exp(x + y)", lambda x, y: math.exp(x + y))
    if kind == "exp_product":
        return pde_exp_product(N), ode.ClosedFormSolution("exp(x y)", lambda x, y: math.exp(x * y))
    if kind == "geometric":
        return pde_geometric(N), ode.ClosedFormSolution("1/(1 - x - y)", lambda x, y: 1.0 / (1.0 - x - y))
    problem = SeparablePDEProblem(
        DerivativeOracle.from_descriptor(d["g"], "g"),
        DerivativeOracle.from_descriptor(d["h"], "h"),
        tuple(d["center"]),
        d["C"],
    )
    return lemma5_solve(problem, N)


def _coeff_list(s: TaylorSeries) -> list:
    return [s.coeff(k) for k in range(s.order + 1)]


def solve_document(d: dict, points=None, window=None) -> dict:
    """Coefficients, evaluations, residual diagnostics and a radius estimate."""
    d = validate(d)
    points = list(points if points is not None else d.get("eval", []))
    doc = {"type": d["type"], "order": d["order"]}
    if d["type"] in MULTIVARIATE:
        m, cf = build_multivariate(d)
        doc["center"] = list(m.center)
        doc["coefficients"] = [[list(a), v] for a, v in sorted(m.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))]
        evals = []
        for pt in points:
            if not isinstance(pt, (list, tuple)) or len(pt) != 2:
                raise DescriptorError("eval", f"bivariate problems take points [x, y], got {pt!r}")
            pt = [float(v) for v in pt]
            evals.append({"point": pt, "value": eval_multitaylor(m, pt), "closed_form": cf(*pt)})
        doc["evaluations"] = evals
        return doc
    s, cf, residual, meta = build_univariate(d)
    doc["x0"] = s.center
    doc["coefficients"] = _coeff_list(s)
    evals = []
    for x in points:
        x = float(x[0] if isinstance(x, list) else x)
        item = {"x": x, "value": s(x)}
        if cf is not None:
            item["closed_form"] = cf(x)
        evals.append(item)
    doc["evaluations"] = evals
    if residual is not None and s.order > 2:
        res, scale = ode.ode_residual(residual[0], s, **residual[1])
        worst = float(np.max(np.abs(res.coeffs)))
        doc["residual"] = {"max_abs": worst, "relative": worst / scale if scale else 0.0, "orders": res.order + 1}
    if meta:
        doc["metadata"] = dict(meta)
    try:
        doc["radius"] = estimate_radius(s, window=window if window else min(s.order, max(32, s.order // 8))).as_dict()
    except (ValueError, NumericFailure) as exc:
        doc["radius"] = {"error": str(exc)}
    return doc


def radius_document(d: dict, window=None, checkpoints=None) -> dict:
    d = validate(d)
    if d["type"] in MULTIVARIATE:
        raise DescriptorError("type", "radius queries take univariate problems")
    s, _, _, _ = build_univariate(d)
    est = estimate_radius(s, window)
    doc = {"type": d["type"], "order": s.order, **est.as_dict()}
    if checkpoints:
        doc["root_sequence"] = [[p.index, p.value] for p in root_sequence(s, [c for c in checkpoints if c <= s.order])]
    return doc
