"""One-parameter homothetic exponential motions in the dual Lorentz space.

A motion maps a point X of the moving frame to Y = H(t) X + C(t) in the
fixed frame, where H(t) = h(t) * exp(t*A), h is a non-constant dual scalar
function, A a constant Lorentz anti-symmetric dual matrix and C(t) a dual
translation curve.  The module provides frames (H and its derivatives to any
order), point transforms, velocity decomposition, regularity analysis and
the pole-point / pole-curve machinery.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .dual_scalar import DualScalar, ScalarFunction
from .dual_matrix import (DualMat3, axis_invariants, det, expm, inverse,
                          is_lorentz_antisymmetric, is_nilpotent, scalar_matrix)
from .errors import NullVector, SingularHprime, ZeroRealPart
from .lorentz import CausalClass, DualVec3, causal_class, dual_norm

#: A point of the moving space: either a fixed dual vector or a moving point
#: given by three scalar functions of t.
PointLike = Union[DualVec3, Sequence[ScalarFunction]]


class MotionMode(enum.Enum):
    GENERAL = "general"
    NILPOTENT = "nilpotent"


def point_derivatives(point: PointLike, t: float, order: int) -> list[DualVec3]:
    """Evaluate a point and its derivatives [X, X', ..., X^(order)] at t.

    A constant ``DualVec3`` has all derivatives zero."""
    if isinstance(point, DualVec3):
        return [point] + [DualVec3.zero()] * order
    comps = list(point)
    if len(comps) != 3:
        raise ValueError("a moving point needs exactly 3 component functions")
    out = []
    for _ in range(order + 1):
        vals = [f(t) for f in comps]
        out.append(DualVec3(np.array([v.re for v in vals]),
                            np.array([v.du for v in vals])))
        comps = [f.derivative() for f in comps]
    return out


@dataclass(frozen=True)
class MotionFrame:
    """Everything the motion knows at one parameter value.

    ``matrix_derivs[k]`` is the (k+1)-th derivative of the motion matrix;
    ``translation_derivs[k]`` is the k-th derivative of the translation."""

    t: float
    rotation: DualMat3              # g(t) = exp(t*A)
    matrix: DualMat3                # H(t) = h(t) g(t)
    matrix_derivs: tuple[DualMat3, ...]
    scale: DualScalar               # h(t)
    lam: DualScalar                 # -h'/h
    lam_prime: DualScalar
    translation_derivs: tuple[DualVec3, ...]

    @property
    def translation(self) -> DualVec3:
        return self.translation_derivs[0]


@dataclass(frozen=True)
class VelocityDecomposition:
    """absolute = sliding + relative, componentwise in both dual parts."""

    absolute: DualVec3
    sliding: DualVec3
    relative: DualVec3


@dataclass(frozen=True)
class PoleData:
    """Instantaneous rotation centre in the moving and the fixed frame."""

    moving: DualVec3    # P: where the sliding velocity vanishes
    fixed: DualVec3     # Q = H P + C


@dataclass(frozen=True)
class RegularityReport:
    """Singularity analysis of the motion's first derivative matrix."""

    t: float
    det_h_prime: DualScalar
    det_factored: DualScalar      # det(h g) * det(A - lam*I)
    det_shift: DualScalar         # det(A - lam*I)
    char_value: DualScalar        # -lam*(lam**2 - alpha_sq)
    axis_class: CausalClass
    singular: bool
    residual_factorization: float
    residual_char: float
    note: str


@dataclass(frozen=True)
class PoleCurveNode:
    t: float
    pole: PoleData
    moving_tangent: DualVec3      # P'(t)
    fixed_tangent: DualVec3       # Q'(t), computed independently
    mapped_tangent: DualVec3      # H P'(t)


@dataclass(frozen=True)
class ArcRatioReport:
    """Arc-length comparison of the fixed and moving pole curves.

    ``ratios[i]`` is ||Q'||/||P'|| at node i; ``scale_abs`` and
    ``scale_abs_cubed`` carry |h| and |h|**3 so the proportionality law can
    be read off rather than assumed."""

    fixed_arc: DualScalar         # integral of ||Q'|| dt
    moving_arc: DualScalar        # integral of ||P'|| dt
    ts: tuple[float, ...]
    ratios: tuple[DualScalar, ...]
    scale_abs: tuple[DualScalar, ...]
    scale_abs_cubed: tuple[DualScalar, ...]


class Motion:
    """The motion (h, A, C) with optional exact nilpotent fast path.

    Immutable after construction; frames are pure per-t evaluations, so
    concurrent use at different t is safe.
    """

    def __init__(self, scale: ScalarFunction, generator: DualMat3,
                 translation: Sequence[ScalarFunction],
                 mode: MotionMode = MotionMode.GENERAL, cache_order: int = 8):
        if not is_lorentz_antisymmetric(generator):
            raise ValueError("generator must be Lorentz anti-symmetric")
        if mode is MotionMode.NILPOTENT and not is_nilpotent(generator):
            raise ValueError("nilpotent mode requires a generator with vanishing square "
                             "(pure-dual axis)")
        if scale.is_constant():
            raise ValueError("scale function must be non-constant in t "
                             "(constant scale degenerates to an affine map)")
        translation = tuple(translation)
        if len(translation) != 3:
            raise ValueError("translation needs exactly 3 component functions")
        if all(c.derivative().is_identically_zero() for c in translation):
            raise ValueError("translation derivative must not vanish identically")

        self.scale = scale
        self.generator = generator
        self.translation = translation
        self.mode = mode
        self.cache_order = max(2, int(cache_order))

        powers = [DualMat3.identity()]
        for _ in range(self.cache_order):
            powers.append(powers[-1] @ generator)
        self._powers = tuple(powers)

        derivs = [scale]
        for _ in range(self.cache_order):
            derivs.append(derivs[-1].derivative())
        self._scale_derivs = tuple(derivs)

        tderivs = [translation]
        for _ in range(self.cache_order):
            tderivs.append(tuple(c.derivative() for c in tderivs[-1]))
        self._trans_derivs = tuple(tderivs)

        self.axis = axis_invariants(generator)

    # -- cached building blocks ------------------------------------------------

    def _power(self, k: int) -> DualMat3:
        if k < len(self._powers):
            return self._powers[k]
        m = self._powers[-1]
        for _ in range(k - len(self._powers) + 1):
            m = m @ self.generator
        return m

    def _scale_deriv(self, n: int) -> ScalarFunction:
        if n < len(self._scale_derivs):
            return self._scale_derivs[n]
        f = self._scale_derivs[-1]
        for _ in range(n - len(self._scale_derivs) + 1):
            f = f.derivative()
        return f

    def _trans_deriv(self, n: int) -> tuple[ScalarFunction, ...]:
        if n < len(self._trans_derivs):
            return self._trans_derivs[n]
        fs = self._trans_derivs[-1]
        for _ in range(n - len(self._trans_derivs) + 1):
            fs = tuple(c.derivative() for c in fs)
        return fs

    def rotation(self, t: float) -> DualMat3:
        """g(t) = exp(t*A); exact I + t*A when the generator is nilpotent."""
        if self.mode is MotionMode.NILPOTENT:
            return DualMat3.identity() + self.generator.scale(float(t))
        return expm(float(t), self.generator)

    # -- frame assembly -------------------------------------------------------

    def frame(self, t: float, order: int = 2) -> MotionFrame:
        return _cached_frame(self, float(t), int(order))

    def _build_frame(self, t: float, order: int) -> MotionFrame:
        if order < 1:
            order = 1
        h = self.scale(t)
        if abs(h.re) <= 1e-12 * (1.0 + abs(h.du)):
            raise ZeroRealPart(f"scale vanishes at t={t!r}: the motion collapses")
        g = self.rotation(t)
        H = g.scale(h)

        hp = self._scale_deriv(1)(t)
        hpp = self._scale_deriv(2)(t)
        lam = -(hp / h)
        lam_prime = -(hpp / h) + lam * lam

        h_at = [h, hp, hpp] + [self._scale_deriv(n)(t) for n in range(3, order + 1)]
        matrix_derivs = []
        for n in range(1, order + 1):
            acc = DualMat3.zero()
            for k in range(n + 1):
                coef = h_at[n - k] * float(math.comb(n, k))
                acc = acc + self._power(k).scale(coef)
            matrix_derivs.append(acc @ g)

        trans_derivs = []
        for k in range(order + 1):
            vals = [f(t) for f in self._trans_deriv(k)]
            trans_derivs.append(DualVec3(np.array([v.re for v in vals]),
                                         np.array([v.du for v in vals])))

        return MotionFrame(t=t, rotation=g, matrix=H,
                           matrix_derivs=tuple(matrix_derivs),
                           scale=h, lam=lam, lam_prime=lam_prime,
                           translation_derivs=tuple(trans_derivs))

    # -- transforms -------------------------------------------------------------

    def transform(self, t: float, point: PointLike) -> DualVec3:
        """Y = H(t) X + C(t)."""
        fr = self.frame(t, 1)
        x = point_derivatives(point, t, 0)[0]
        return fr.matrix @ x + fr.translation

    def inverse_transform(self, t: float, y: DualVec3) -> DualVec3:
        """X = H(t)^-1 (Y - C(t))."""
        fr = self.frame(t, 1)
        return inverse(fr.matrix) @ (y - fr.translation)

    def matrix_derivative(self, t: float, n: int) -> DualMat3:
        """n-th derivative of H via the binomial expansion over powers of A."""
        if n < 1:
            raise ValueError("derivative order must be positive")
        return self.frame(t, n).matrix_derivs[n - 1]

    def trajectory_derivative(self, t: float, point: PointLike, n: int) -> DualVec3:
        """n-th time derivative of Y(t) = H(t) X(t) + C(t)."""
        if n < 1:
            raise ValueError("derivative order must be positive")
        fr = self.frame(t, n)
        xd = point_derivatives(point, t, n)
        acc = fr.translation_derivs[n]
        for k in range(n + 1):
            hmat = fr.matrix if n - k == 0 else fr.matrix_derivs[n - k - 1]
            acc = acc + (hmat @ xd[k]) * float(math.comb(n, k))
        return acc

    def velocity(self, t: float, point: PointLike) -> VelocityDecomposition:
        """Split Y' into sliding = H'X + C' and relative = H X'."""
        fr = self.frame(t, 1)
        x, xp = point_derivatives(point, t, 1)
        sliding = fr.matrix_derivs[0] @ x + fr.translation_derivs[1]
        relative = fr.matrix @ xp
        return VelocityDecomposition(absolute=sliding + relative,
                                     sliding=sliding, relative=relative)

    # -- regularity and poles ----------------------------------------------------

    def regularity(self, t: float, tol: float = 1e-10) -> RegularityReport:
        """Determinant analysis of H'(t).

        Computes det H' directly and through the factorization
        det(h g) * det(A - lam*I), checks det(A - lam*I) against the
        characteristic form -lam*(lam**2 - alpha_sq), and flags singularity
        when the real part of det H' vanishes within tolerance."""
        fr = self.frame(t, 1)
        hp = fr.matrix_derivs[0]
        d_direct = det(hp)
        det_g = det(fr.rotation)
        shift = self.generator - scalar_matrix(fr.lam)
        d_shift = det(shift)
        d_factored = fr.scale * fr.scale * fr.scale * det_g * d_shift
        asq = self.axis.alpha_sq
        char_value = -fr.lam * (fr.lam * fr.lam - asq)

        scale = 1.0 + max(d_direct.maxabs(), d_factored.maxabs())
        res_fact = (d_direct - d_factored).maxabs() / scale
        res_char = (d_shift - char_value).maxabs() / (1.0 + d_shift.maxabs())
        singular = abs(d_direct.re) <= tol * (1.0 + float(np.max(np.abs(hp.re)))) ** 3
        note = ("eigenvectors of the generator for eigenvalue lam must be null "
                "(<x, x> = 0); the motion is singular exactly on that cone")
        return RegularityReport(t=t, det_h_prime=d_direct, det_factored=d_factored,
                                det_shift=d_shift, char_value=char_value,
                                axis_class=causal_class(self.axis.w),
                                singular=singular,
                                residual_factorization=res_fact,
                                residual_char=res_char, note=note)

    def pole(self, t: float, tol: float = 1e-10) -> PoleData:
        """Pole point P = -(H')^-1 C' and its fixed-frame image Q = H P + C."""
        fr = self.frame(t, 1)
        hp = fr.matrix_derivs[0]
        d = det(hp)
        if abs(d.re) <= tol * (1.0 + float(np.max(np.abs(hp.re)))) ** 3:
            raise SingularHprime(t, f"det real part {d.re!r}")
        p = -(inverse(hp) @ fr.translation_derivs[1])
        q = fr.matrix @ p + fr.translation
        return PoleData(moving=p, fixed=q)

    def _pole_node(self, t: float) -> PoleCurveNode:
        fr = self.frame(t, 2)
        hp = fr.matrix_derivs[0]
        d = det(hp)
        if abs(d.re) <= 1e-10 * (1.0 + float(np.max(np.abs(hp.re)))) ** 3:
            raise SingularHprime(t, f"det real part {d.re!r}")
        hp_inv = inverse(hp)
        hs = fr.matrix_derivs[1]
        c1, c2 = fr.translation_derivs[1], fr.translation_derivs[2]
        p = -(hp_inv @ c1)
        q = fr.matrix @ p + fr.translation
        # d/dt[-(H')^-1 C'] = (H')^-1 H'' (H')^-1 C' - (H')^-1 C''
        pp = hp_inv @ (hs @ (hp_inv @ c1)) - hp_inv @ c2
        q_prime = hp @ p + fr.matrix @ pp + c1
        mapped = fr.matrix @ pp
        res = (q_prime - mapped).maxabs() / (1.0 + mapped.maxabs())
        if res > 1e-8:
            raise ArithmeticError(
                f"pole-curve tangency identity violated at t={t!r}: residual {res!r}")
        return PoleCurveNode(t=t, pole=PoleData(moving=p, fixed=q),
                             moving_tangent=pp, fixed_tangent=q_prime,
                             mapped_tangent=mapped)

    def pole_curves(self, t0: float, t1: float, samples: int) -> list[PoleCurveNode]:
        """Sample the moving and fixed pole curves on [t0, t1].

        Each node carries P, Q, P', Q' and H P'; the tangency identity
        Q' = H P' is asserted per node."""
        if samples < 1:
            raise ValueError("samples must be positive")
        ts = np.linspace(t0, t1, samples)
        return [self._pole_node(float(t)) for t in ts]

    def pole_arc_ratio(self, t0: float, t1: float, samples: int) -> ArcRatioReport:
        """Trapezoid arc lengths of both pole curves plus the pointwise ratio
        ||Q'||/||P'||, reported next to |h| and |h|**3."""
        nodes = self.pole_curves(t0, t1, samples)
        ratios, habs, habs3, qn, pn = [], [], [], [], []
        for node in nodes:
            try:
                np_ = dual_norm(node.moving_tangent)
                nq = dual_norm(node.fixed_tangent)
            except NullVector as exc:
                raise NullVector(f"pole-curve tangent is null at t={node.t!r}") from exc
            h = abs(self.scale(node.t))
            ratios.append(nq / np_)
            habs.append(h)
            habs3.append(h * h * h)
            qn.append(nq)
            pn.append(np_)
        fixed_arc = _trapezoid([n.t for n in nodes], qn)
        moving_arc = _trapezoid([n.t for n in nodes], pn)
        return ArcRatioReport(fixed_arc=fixed_arc, moving_arc=moving_arc,
                              ts=tuple(n.t for n in nodes),
                              ratios=tuple(ratios), scale_abs=tuple(habs),
                              scale_abs_cubed=tuple(habs3))


def _trapezoid(ts: list[float], vals: list[DualScalar]) -> DualScalar:
    acc = DualScalar(0.0)
    for i in range(len(ts) - 1):
        dt = ts[i + 1] - ts[i]
        acc = acc + (vals[i] + vals[i + 1]) * (0.5 * dt)
    return acc


@functools.lru_cache(maxsize=2048)
def _cached_frame(motion: Motion, t: float, order: int) -> MotionFrame:
    return motion._build_frame(t, order)
