"""3x3 dual-matrix algebra: products, determinant, inverse, Lorentz
structure predicates, the hat/vee maps, and the dual matrix exponential."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dual_scalar import DualScalar, Number
from .errors import NotAntisymmetric, SingularRealPart
from .lorentz import DualVec3, dual_inner

# Sign matrix of the metric: diag(1, 1, -1).
SIGN_MATRIX = np.diag([1.0, 1.0, -1.0])
SIGN_MATRIX.setflags(write=False)

_I3 = np.eye(3)
_I3.setflags(write=False)


def _mat(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class DualMat3:
    """Dual 3x3 matrix re + eps*du; products drop the eps**2 term."""

    re: np.ndarray
    du: np.ndarray

    def __post_init__(self):
        re, du = _mat(self.re).copy(), _mat(self.du).copy()
        re.setflags(write=False)
        du.setflags(write=False)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "du", du)

    @staticmethod
    def of(re, du=None) -> "DualMat3":
        return DualMat3(_mat(re), _mat(du) if du is not None else np.zeros((3, 3)))

    @staticmethod
    def identity() -> "DualMat3":
        return DualMat3(_I3, np.zeros((3, 3)))

    @staticmethod
    def zero() -> "DualMat3":
        return DualMat3(np.zeros((3, 3)), np.zeros((3, 3)))

    def __add__(self, other: "DualMat3") -> "DualMat3":
        return DualMat3(self.re + other.re, self.du + other.du)

    def __sub__(self, other: "DualMat3") -> "DualMat3":
        return DualMat3(self.re - other.re, self.du - other.du)

    def __neg__(self) -> "DualMat3":
        return DualMat3(-self.re, -self.du)

    def __matmul__(self, other):
        if isinstance(other, DualMat3):
            return DualMat3(self.re @ other.re,
                            self.re @ other.du + self.du @ other.re)
        if isinstance(other, DualVec3):
            return DualVec3(self.re @ other.re,
                            self.re @ other.du + self.du @ other.re)
        return NotImplemented

    def scale(self, s: Number) -> "DualMat3":
        d = DualScalar.of(s)
        return DualMat3(d.re * self.re, d.re * self.du + d.du * self.re)

    @property
    def T(self) -> "DualMat3":
        return DualMat3(self.re.T, self.du.T)

    def maxabs(self) -> float:
        return float(max(np.max(np.abs(self.re)), np.max(np.abs(self.du))))

    def __repr__(self) -> str:
        return f"DualMat3(re={self.re.tolist()}, du={self.du.tolist()})"


def scalar_matrix(s: Number) -> DualMat3:
    return DualMat3.identity().scale(s)


def _adjugate(a: np.ndarray) -> np.ndarray:
    # transpose of the cofactor matrix, written out for 3x3
    return np.array([
        [a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1],
         a[0, 2] * a[2, 1] - a[0, 1] * a[2, 2],
         a[0, 1] * a[1, 2] - a[0, 2] * a[1, 1]],
        [a[1, 2] * a[2, 0] - a[1, 0] * a[2, 2],
         a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0],
         a[0, 2] * a[1, 0] - a[0, 0] * a[1, 2]],
        [a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0],
         a[0, 1] * a[2, 0] - a[0, 0] * a[2, 1],
         a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]]])


def det(m: DualMat3) -> DualScalar:
    """Dual determinant: det(A) + eps*tr(adj(A) @ B)."""
    a, b = m.re, m.du
    d_re = (a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]))
    d_du = float(np.trace(_adjugate(a) @ b))
    return DualScalar(float(d_re), d_du)


def singularity_threshold(m: DualMat3) -> float:
    n = float(np.max(np.abs(m.re)))
    return 1e-12 * (1.0 + n ** 3)


def inverse(m: DualMat3) -> DualMat3:
    """Closed-form dual inverse A^-1 - eps * A^-1 B A^-1."""
    d = det(m)
    if abs(d.re) < singularity_threshold(m):
        raise SingularRealPart(f"real part singular: det.re = {d.re!r}")
    a_inv = np.linalg.solve(m.re, np.eye(3))
    return DualMat3(a_inv, -a_inv @ m.du @ a_inv)


def is_lorentz_antisymmetric(m: DualMat3, tol: float = 1e-10) -> bool:
    """A = -eps_sign @ A.T @ eps_sign within tol on both components."""
    r_re = m.re + SIGN_MATRIX @ m.re.T @ SIGN_MATRIX
    r_du = m.du + SIGN_MATRIX @ m.du.T @ SIGN_MATRIX
    return float(max(np.max(np.abs(r_re)), np.max(np.abs(r_du)))) <= tol


def is_lorentz_orthogonal(g: DualMat3, tol: float = 1e-10) -> bool:
    """eps_sign @ g.T @ eps_sign @ g = I within tol on both components."""
    sign = DualMat3.of(SIGN_MATRIX)
    r = sign @ g.T @ sign @ g - DualMat3.identity()
    return r.maxabs() <= tol


def _hat_real(w: np.ndarray) -> np.ndarray:
    return np.array([[0.0, w[2], -w[1]],
                     [-w[2], 0.0, w[0]],
                     [-w[1], w[0], 0.0]])


def hat(w: DualVec3) -> DualMat3:
    """The unique Lorentz anti-symmetric matrix M with M @ x = w ^ x.

    The entry pattern was fixed once by solving M @ e_j = w ^ e_j on the
    basis vectors under the corrected cross-product convention."""
    return DualMat3(_hat_real(w.re), _hat_real(w.du))


def vee(m: DualMat3, tol: float = 1e-10) -> DualVec3:
    """Inverse of hat; requires a Lorentz anti-symmetric argument."""
    if not is_lorentz_antisymmetric(m, tol):
        raise NotAntisymmetric("vee requires a Lorentz anti-symmetric matrix")
    return DualVec3(np.array([m.re[1, 2], -m.re[0, 2], m.re[0, 1]]),
                    np.array([m.du[1, 2], -m.du[0, 2], m.du[0, 1]]))


def expm(t: float, a: DualMat3, tail_tol: float = 1e-16, max_terms: int = 120) -> DualMat3:
    """exp(t*A) by scaling-and-squaring with a truncated dual Taylor tail.

    For a pure-dual A the series terminates exactly at I + t*A because the
    square of a pure-dual matrix vanishes."""
    nrm = float(np.max(np.abs(t * a.re)))
    s = 0 if nrm <= 0.0 else max(0, int(np.ceil(np.log2(nrm))) + 2)
    m = a.scale(t / (2.0 ** s))
    acc = DualMat3.identity()
    term = DualMat3.identity()
    for k in range(1, max_terms + 1):
        term = (term @ m).scale(1.0 / k)
        acc = acc + term
        if term.maxabs() < tail_tol:
            break
    else:
        raise RuntimeError("dual matrix exponential did not converge")
    for _ in range(s):
        acc = acc @ acc
    return acc


def is_nilpotent(a: DualMat3, tol: float = 1e-10) -> bool:
    """True iff A @ A vanishes (for Lorentz anti-symmetric 3x3 this implies
    all higher powers vanish too)."""
    return (a @ a).maxabs() <= tol


@dataclass(frozen=True)
class AxisData:
    """Axis vector of an anti-symmetric matrix and its Lorentzian square."""

    w: DualVec3
    alpha_sq: DualScalar


def axis_invariants(a: DualMat3, tol: float = 1e-10) -> AxisData:
    """Axis w = vee(A) and alpha_sq = <w, w>.

    alpha_sq may be negative (timelike axis) or zero (null axis); no square
    root is taken here."""
    w = vee(a, tol)
    return AxisData(w, dual_inner(w, w))
