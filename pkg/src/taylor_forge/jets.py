"""Derivative oracles: functions that can report g^(k)(x0) for any k."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import CenterMismatchError, DescriptorError
from .series import DerivativeStream, Polynomial, TaylorSeries, denormalize, normalize

NAMED = ("sin", "cos", "exp", "constant", "monomial")


@dataclass(frozen=True, eq=False)
class DerivativeOracle:
    kind: str  # "named" | "coeffs" | "poly"
    name: str | None = None
    params: dict = field(default_factory=dict)
    series: TaylorSeries | None = None
    poly: Polynomial | None = None
    # orders at which an explicit-coefficient oracle was asked past its data
    truncation_hits: set = field(default_factory=set)

    @classmethod
    def named(cls, name: str, **params) -> "DerivativeOracle":
        if name not in NAMED:
            raise ValueError(f"unknown named function {name!r}; known: {NAMED}")
        if name == "constant":
            params = {"value": float(params.get("value", 1.0))}
        elif name == "monomial":
            power = params.get("power", 1)
            if int(power) != power or power < 0:
                raise ValueError("monomial power must be a nonnegative integer")
            params = {"coef": float(params.get("coef", 1.0)), "power": int(power)}
        elif params:
            raise ValueError(f"{name} takes no parameters")
        return cls("named", name=name, params=params)

    @classmethod
    def constant(cls, value: float) -> "DerivativeOracle":
        return cls.named("constant", value=value)

    @classmethod
    def from_series(cls, s: TaylorSeries) -> "DerivativeOracle":
        return cls("coeffs", series=s)

    @classmethod
    def from_poly(cls, p) -> "DerivativeOracle":
        return cls("poly", poly=p if isinstance(p, Polynomial) else Polynomial(tuple(p)))

    @classmethod
    def from_descriptor(cls, d: dict, where: str = "g") -> "DerivativeOracle":
        if not isinstance(d, dict):
            raise DescriptorError(where, "oracle descriptor must be an object")
        try:
            if "named" in d:
                extra = {k: v for k, v in d.items() if k != "named"}
                return cls.named(d["named"], **extra)
            if "coeffs" in d:
                return cls.from_series(TaylorSeries(float(d.get("center", 0.0)), [float(v) for v in d["coeffs"]]))
            if "poly" in d:
                return cls.from_poly([float(v) for v in d["poly"]])
        except (TypeError, ValueError) as exc:
            raise DescriptorError(where, str(exc)) from None
        raise DescriptorError(where, "expected one of 'named', 'coeffs', 'poly'")

    @property
    def truncated(self) -> bool:
        return bool(self.truncation_hits)

    def derivative(self, k: int, x0: float) -> float:
        if self.kind == "named":
            return _named_derivative(self.name, self.params, k, x0)
        if self.kind == "poly":
            p = self.poly
            for _ in range(k):
                p = p.differentiate()
            return float(p(x0))
        s = self.series
        if x0 != s.center:
            raise CenterMismatchError(f"explicit coefficients are centered at {s.center}, asked at {x0}")
        if k > s.order:
            self.truncation_hits.add(k)
            return 0.0
        return denormalize(s.truncate(k)).values[k]

    def __call__(self, x: float) -> float:
        if self.kind == "named":
            return _named_derivative(self.name, self.params, 0, x)
        if self.kind == "poly":
            return float(self.poly(x))
        return self.series(x)

    def taylor(self, x0: float, N: int) -> TaylorSeries:
        """Taylor coefficients of the oracle's function about ``x0`` to order N."""
        if self.kind == "coeffs" and x0 == self.series.center:
            c = list(self.series.truncate(min(N, self.series.order)).coeffs)
            c += [0.0] * (N + 1 - len(c))
            return TaylorSeries(x0, c, self.series.scale)
        return normalize(DerivativeStream(x0, tuple(self.derivative(k, x0) for k in range(N + 1))))

    def describe(self) -> dict:
        if self.kind == "named":
            return {"named": self.name, **self.params}
        if self.kind == "poly":
            return {"poly": list(self.poly.coeffs)}
        return {"coeffs": list(map(float, self.series.coeffs)), "center": self.series.center}


def _named_derivative(name, params, k, x):
    if name == "sin":
        return (math.sin(x), math.cos(x), -math.sin(x), -math.cos(x))[k % 4]
    if name == "cos":
        return (math.cos(x), -math.sin(x), -math.cos(x), math.sin(x))[k % 4]
    if name == "exp":
        return math.exp(x)
    if name == "constant":
        return params["value"] if k == 0 else 0.0
    a, p = params["coef"], params["power"]
    if k > p:
        return 0.0
    return a * math.perm(p, k) * x ** (p - k)
