"""Real and dual Lorentzian 3-vector algebra with metric diag(1, 1, -1).

The metric and the cross product follow the computational convention
validated by the orthogonality identities <a^b, a> = <a^b, b> = 0; with it
e1 ^ e2 = e3.  Causal classification is decided by the real part alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .dual_scalar import DualScalar, Number
from .errors import NullVector

# Metric diagonal: <a, b> = a1*b1 + a2*b2 - a3*b3.
METRIC_DIAG = np.array([1.0, 1.0, -1.0])
METRIC_DIAG.setflags(write=False)


def _vec(a) -> np.ndarray:
    v = np.asarray(a, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    return v


def lorentz_inner(a, b) -> float:
    a, b = _vec(a), _vec(b)
    return float(a[0] * b[0] + a[1] * b[1] - a[2] * b[2])


def lorentz_cross(a, b) -> np.ndarray:
    """Lorentzian cross product; middle component sign fixed so that the
    result is metric-orthogonal to both arguments."""
    a, b = _vec(a), _vec(b)
    return np.array([a[2] * b[1] - a[1] * b[2],
                     a[0] * b[2] - a[2] * b[0],
                     a[0] * b[1] - a[1] * b[0]])


@dataclass(frozen=True)
class DualVec3:
    """Dual vector re + eps*du with components in the Lorentzian 3-space."""

    re: np.ndarray
    du: np.ndarray

    def __post_init__(self):
        re, du = _vec(self.re).copy(), _vec(self.du).copy()
        re.setflags(write=False)
        du.setflags(write=False)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "du", du)

    @staticmethod
    def of(re, du=None) -> "DualVec3":
        return DualVec3(_vec(re), _vec(du) if du is not None else np.zeros(3))

    @staticmethod
    def zero() -> "DualVec3":
        return DualVec3(np.zeros(3), np.zeros(3))

    def __add__(self, other: "DualVec3") -> "DualVec3":
        return DualVec3(self.re + other.re, self.du + other.du)

    def __sub__(self, other: "DualVec3") -> "DualVec3":
        return DualVec3(self.re - other.re, self.du - other.du)

    def __neg__(self) -> "DualVec3":
        return DualVec3(-self.re, -self.du)

    def __mul__(self, s: Number) -> "DualVec3":
        d = DualScalar.of(s)
        return DualVec3(d.re * self.re, d.re * self.du + d.du * self.re)

    __rmul__ = __mul__

    def maxabs(self) -> float:
        return float(max(np.max(np.abs(self.re)), np.max(np.abs(self.du))))

    def __repr__(self) -> str:
        return f"DualVec3(re={self.re.tolist()}, du={self.du.tolist()})"


def dual_inner(a: DualVec3, b: DualVec3) -> DualScalar:
    return DualScalar(lorentz_inner(a.re, b.re),
                      lorentz_inner(a.re, b.du) + lorentz_inner(a.du, b.re))


def dual_cross(a: DualVec3, b: DualVec3) -> DualVec3:
    return DualVec3(lorentz_cross(a.re, b.re),
                    lorentz_cross(a.re, b.du) + lorentz_cross(a.du, b.re))


class CausalClass(enum.Enum):
    TIMELIKE = "Timelike"
    SPACELIKE = "Spacelike"
    LIGHTLIKE = "Lightlike"


def causal_class(a: DualVec3, tol: float = 1e-10) -> CausalClass:
    """Causal type of a dual vector, judged on its real part.

    The zero vector counts as spacelike."""
    q = lorentz_inner(a.re, a.re)
    if q < -tol:
        return CausalClass.TIMELIKE
    if q > tol or not np.any(a.re):
        return CausalClass.SPACELIKE
    return CausalClass.LIGHTLIKE


def dual_norm(a: DualVec3, tol: float = 1e-10) -> DualScalar:
    """Dual Lorentzian norm sqrt(|<a,a>|) + eps*<a, a*>/||a||.

    Undefined on the null cone (lightlike or zero real part)."""
    q = lorentz_inner(a.re, a.re)
    if abs(q) <= tol:
        raise NullVector(f"norm undefined: real part {a.re.tolist()} is null")
    n = float(np.sqrt(abs(q)))
    return DualScalar(n, lorentz_inner(a.re, a.du) / n)


class UnitSphere(enum.Enum):
    HYPERBOLIC = "Hyperbolic"    # unit timelike dual vectors
    LORENTZIAN = "Lorentzian"    # unit spacelike dual vectors


def on_unit_sphere(a: DualVec3, which: UnitSphere, tol: float = 1e-10) -> bool:
    """True iff the dual norm is 1 + eps*0 and the causal class matches."""
    try:
        n = dual_norm(a, tol)
    except NullVector:
        return False
    if abs(n.re - 1.0) > tol or abs(n.du) > tol:
        return False
    wanted = CausalClass.TIMELIKE if which is UnitSphere.HYPERBOLIC else CausalClass.SPACELIKE
    return causal_class(a, tol) is wanted
