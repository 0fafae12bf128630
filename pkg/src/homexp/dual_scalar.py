"""Dual-number arithmetic and a closed-form differentiable function model.

A dual number a + eps*b satisfies eps**2 = 0, so every product keeps only the
first-order dual part.  ``ScalarFunction`` represents finite sums of terms
(num(t)/den(t)) * exp(rate*t) with dual polynomial coefficients and a real
rate; the family is closed under +, *, and d/dt, which gives exact
arbitrary-order derivatives without numeric differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import PoleAtT, ZeroRealPart

# Relative threshold below which a real part counts as zero (division, poles).
ZERO_RE_TOL = 1e-12

Number = Union[int, float, "DualScalar"]


@dataclass(frozen=True)
class DualScalar:
    """A dual number re + eps*du with eps**2 = 0."""

    re: float
    du: float = 0.0

    @staticmethod
    def of(value: Number) -> "DualScalar":
        if isinstance(value, DualScalar):
            return value
        return DualScalar(float(value), 0.0)

    def __add__(self, other: Number) -> "DualScalar":
        o = DualScalar.of(other)
        return DualScalar(self.re + o.re, self.du + o.du)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "DualScalar":
        o = DualScalar.of(other)
        return DualScalar(self.re - o.re, self.du - o.du)

    def __rsub__(self, other: Number) -> "DualScalar":
        return DualScalar.of(other) - self

    def __mul__(self, other: Number) -> "DualScalar":
        o = DualScalar.of(other)
        return DualScalar(self.re * o.re, self.re * o.du + self.du * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "DualScalar":
        o = DualScalar.of(other)
        if abs(o.re) <= ZERO_RE_TOL * (1.0 + abs(o.du)):
            raise ZeroRealPart(f"division by {o}: pure-dual numbers have no inverse")
        return DualScalar(self.re / o.re,
                          (self.du * o.re - self.re * o.du) / (o.re * o.re))

    def __rtruediv__(self, other: Number) -> "DualScalar":
        return DualScalar.of(other) / self

    def __neg__(self) -> "DualScalar":
        return DualScalar(-self.re, -self.du)

    def __abs__(self) -> "DualScalar":
        s = -1.0 if self.re < 0 else 1.0
        return DualScalar(abs(self.re), s * self.du)

    def sqrt(self) -> "DualScalar":
        """Principal dual square root; defined only for positive real part."""
        if self.re <= 0.0:
            raise ValueError(f"dual sqrt undefined for non-positive real part: {self}")
        r = math.sqrt(self.re)
        return DualScalar(r, self.du / (2.0 * r))

    def maxabs(self) -> float:
        return max(abs(self.re), abs(self.du))

    def __repr__(self) -> str:
        return f"{self.re}{self.du:+}ε"


DS_ZERO = DualScalar(0.0)
DS_ONE = DualScalar(1.0)


def _as_dual(c) -> DualScalar:
    if isinstance(c, DualScalar):
        return c
    if isinstance(c, (list, tuple)):
        re, du = c
        return DualScalar(float(re), float(du))
    return DualScalar(float(c), 0.0)


@dataclass(frozen=True)
class DualPolynomial:
    """Polynomial in t with dual coefficients, stored ascending, no trailing zeros."""

    coeffs: tuple[DualScalar, ...]

    def __post_init__(self):
        trimmed = list(self.coeffs)
        while trimmed and trimmed[-1].re == 0.0 and trimmed[-1].du == 0.0:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(trimmed))

    @staticmethod
    def of(coeffs: Iterable) -> "DualPolynomial":
        return DualPolynomial(tuple(_as_dual(c) for c in coeffs))

    @staticmethod
    def one() -> "DualPolynomial":
        return DualPolynomial((DS_ONE,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == DS_ONE

    def max_coeff(self) -> float:
        return max((c.maxabs() for c in self.coeffs), default=0.0)

    def evaluate(self, t: float) -> DualScalar:
        # t is real, so the two components evaluate as independent real Horner passes
        re = du = 0.0
        for c in reversed(self.coeffs):
            re = re * t + c.re
            du = du * t + c.du
        return DualScalar(re, du)

    def derivative(self) -> "DualPolynomial":
        return DualPolynomial(tuple(c * float(k) for k, c in enumerate(self.coeffs) if k > 0))

    def __add__(self, other: "DualPolynomial") -> "DualPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(n):
            a = self.coeffs[k] if k < len(self.coeffs) else DS_ZERO
            b = other.coeffs[k] if k < len(other.coeffs) else DS_ZERO
            out.append(a + b)
        return DualPolynomial(tuple(out))

    def __neg__(self) -> "DualPolynomial":
        return DualPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "DualPolynomial") -> "DualPolynomial":
        return self + (-other)

    def __mul__(self, other: "DualPolynomial") -> "DualPolynomial":
        if self.is_zero() or other.is_zero():
            return DualPolynomial(())
        out = [DS_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return DualPolynomial(tuple(out))

    def scale(self, c: Number) -> "DualPolynomial":
        d = DualScalar.of(c)
        return DualPolynomial(tuple(a * d for a in self.coeffs))


@dataclass(frozen=True)
class Term:
    """One summand (num(t)/den(t)) * exp(rate*t); den has nonzero real leading coeff."""

    num: DualPolynomial
    den: DualPolynomial
    rate: float

    def __post_init__(self):
        if self.den.is_zero() or self.den.coeffs[-1].re == 0.0:
            raise ValueError("denominator must have a nonzero real leading coefficient")

    def evaluate(self, t: float) -> DualScalar:
        n = self.num.evaluate(t)
        if not self.den.is_one():
            d = self.den.evaluate(t)
            if abs(d.re) <= ZERO_RE_TOL * (1.0 + self.den.max_coeff()):
                raise PoleAtT(t)
            n = n / d
        if self.rate != 0.0:
            n = n * math.exp(self.rate * t)
        return n

    def derivative(self) -> "Term":
        n, d, r = self.num, self.den, self.rate
        dn = n.derivative()
        if d.is_one():
            new_num = dn if r == 0.0 else dn + n.scale(r)
            return Term(new_num, d, r)
        new_num = dn * d - n * d.derivative()
        if r != 0.0:
            new_num = new_num + (n * d).scale(r)
        return Term(new_num, d * d, r)


# Sample abscissae used by the heuristic zero/constant detectors.
_PROBE_TS = (-2.7, -1.31, -0.62, 0.0, 0.49, 1.17, 2.03, 2.91, -3.7, 3.43,
             0.83, -0.17, 1.93, -2.23, 4.11)


class ScalarFunction:
    """Sum of rational-times-exponential terms with dual coefficients.

    Closed under addition, multiplication and differentiation; evaluation at a
    real t yields a ``DualScalar``.  This is rich enough to express
    polynomials, exponentially damped polynomials and the rational homothety
    families the degeneracy analysis needs.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Term]):
        self.terms = tuple(t for t in terms if not t.num.is_zero())

    # -- constructors ------------------------------------------------------

    @staticmethod
    def polynomial(coeffs: Sequence, rate: float = 0.0) -> "ScalarFunction":
        """coeffs ascending in t; entries may be floats, pairs, or DualScalars."""
        return ScalarFunction((Term(DualPolynomial.of(coeffs), DualPolynomial.one(),
                                    float(rate)),))

    @staticmethod
    def constant(value: Number) -> "ScalarFunction":
        return ScalarFunction.polynomial([_as_dual(value)])

    @staticmethod
    def rational(num: Sequence, den: Sequence, rate: float = 0.0) -> "ScalarFunction":
        return ScalarFunction((Term(DualPolynomial.of(num), DualPolynomial.of(den),
                                    float(rate)),))

    @staticmethod
    def zero() -> "ScalarFunction":
        return ScalarFunction(())

    # -- evaluation and calculus -------------------------------------------

    def __call__(self, t: float) -> DualScalar:
        acc = DS_ZERO
        for term in self.terms:
            acc = acc + term.evaluate(t)
        return acc

    def derivative(self) -> "ScalarFunction":
        return ScalarFunction(tuple(t.derivative() for t in self.terms))

    def nth_derivative(self, n: int) -> "ScalarFunction":
        if n < 0:
            raise ValueError("derivative order must be non-negative")
        f = self
        for _ in range(n):
            f = f.derivative()
        return f

    # -- algebra -------------------------------------------------------------

    def __add__(self, other: "ScalarFunction") -> "ScalarFunction":
        return ScalarFunction(self.terms + other.terms)

    def __neg__(self) -> "ScalarFunction":
        return ScalarFunction(tuple(Term(-t.num, t.den, t.rate) for t in self.terms))

    def __sub__(self, other: "ScalarFunction") -> "ScalarFunction":
        return self + (-other)

    def __mul__(self, other: "ScalarFunction") -> "ScalarFunction":
        return ScalarFunction(tuple(Term(a.num * b.num, a.den * b.den, a.rate + b.rate)
                                    for a in self.terms for b in other.terms))

    def scale(self, c: Number) -> "ScalarFunction":
        return ScalarFunction(tuple(Term(t.num.scale(c), t.den, t.rate) for t in self.terms))

    # -- structural queries ---------------------------------------------------

    def coeff_scale(self) -> float:
        return max((t.num.max_coeff() for t in self.terms), default=0.0)

    def probe(self, min_points: int = 5) -> list[tuple[float, DualScalar]]:
        """Evaluate at fixed sample abscissae, skipping poles."""
        out = []
        for t in _PROBE_TS:
            try:
                out.append((t, self(t)))
            except PoleAtT:
                continue
            if len(out) >= min_points * 3:
                break
        if len(out) < min_points:
            raise ValueError("function has too many poles to probe")
        return out

    def is_identically_zero(self, tol: float = 1e-11) -> bool:
        if not self.terms:
            return True
        scale = 1.0 + self.coeff_scale()
        return all(v.maxabs() <= tol * scale for _, v in self.probe())

    def is_constant(self, tol: float = 1e-11) -> bool:
        return self.derivative().is_identically_zero(tol)

    # -- serialization ---------------------------------------------------------

    def to_records(self) -> list[dict]:
        if not self.terms:  # identically zero still needs one term on disk
            return [{"num": [[0.0, 0.0]], "den": [[1.0, 0.0]], "rate": 0.0}]
        return [{"num": [[c.re, c.du] for c in t.num.coeffs],
                 "den": [[c.re, c.du] for c in t.den.coeffs],
                 "rate": t.rate} for t in self.terms]

    @staticmethod
    def from_records(records: Iterable[dict]) -> "ScalarFunction":
        terms = []
        for rec in records:
            num = DualPolynomial.of(rec["num"])
            den = DualPolynomial.of(rec.get("den", [[1.0, 0.0]]))
            terms.append(Term(num, den, float(rec.get("rate", 0.0))))
        return ScalarFunction(tuple(terms))

    def __repr__(self) -> str:
        return f"ScalarFunction({len(self.terms)} terms)"
