"""Acceleration analysis of homothetic exponential motions.

Covers the four-way acceleration split, the Coriolis operator, the structured
second derivative of the motion matrix, the determinant invariants that
govern existence of an acceleration centre, the centre solver, and the three
closed-form families of scale functions for which no centre exists.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .dual_scalar import DualScalar, ScalarFunction
from .dual_matrix import DualMat3, det, inverse, scalar_matrix
from .errors import InvalidFamilyConstants
from .lorentz import DualVec3
from .motion import Motion, PointLike, point_derivatives


@dataclass(frozen=True)
class AccelDecomposition:
    """absolute = sliding + relative + coriolis, in both dual parts."""

    absolute: DualVec3
    sliding: DualVec3     # H'' X + C''
    relative: DualVec3    # H X''
    coriolis: DualVec3    # 2 H' X'


@dataclass(frozen=True)
class DegeneracyInvariants:
    """Scalars controlling singularity of the second derivative matrix.

    ``factor`` is mu * ((mu + alpha_sq)**2 - 4*alpha_sq*lam**2), which equals
    det((A - lam*I)**2 - lam'*I) exactly (proportionality constant +1,
    pinned by the brute-force determinant oracle)."""

    lam: DualScalar
    lam_prime: DualScalar
    mu: DualScalar           # lam**2 - lam'
    alpha_sq: DualScalar     # <w, w> for the generator axis w
    factor: DualScalar
    det_direct: DualScalar   # det((A - lam*I)**2 - lam'*I), cross-check


class DegeneracyKind(enum.Enum):
    MU_ZERO = "MuZero"
    PLUS_BRANCH = "PlusBranch"
    MINUS_BRANCH = "MinusBranch"
    # Timelike axes admit no real dual sqrt of alpha_sq, so the two branches
    # cannot be told apart; they are reported merged.
    BRANCH_MERGED = "BranchMerged"
    NUMERICALLY_SINGULAR = "NumericallySingular"
    NONE = "None"


@dataclass(frozen=True)
class AccelCenterResult:
    """Either a centre (sliding acceleration zero there) or the degeneracy
    diagnosis explaining why none exists."""

    invariants: DegeneracyInvariants
    det_second: DualScalar
    center: Optional[DualVec3] = None
    kind: DegeneracyKind = DegeneracyKind.NONE
    residual: Optional[float] = None

    @property
    def has_center(self) -> bool:
        return self.center is not None


def decompose_acceleration(motion: Motion, t: float, point: PointLike) -> AccelDecomposition:
    """Split Y'' into sliding, relative and Coriolis parts."""
    fr = motion.frame(t, 2)
    x, xp, xpp = point_derivatives(point, t, 2)
    sliding = fr.matrix_derivs[1] @ x + fr.translation_derivs[2]
    relative = fr.matrix @ xpp
    coriolis = (fr.matrix_derivs[0] @ xp) * 2.0
    return AccelDecomposition(absolute=sliding + relative + coriolis,
                              sliding=sliding, relative=relative, coriolis=coriolis)


def coriolis_operator(motion: Motion, t: float) -> DualMat3:
    """Omega = 2 H (A - lam*I) H^-1; maps the relative velocity of any moving
    point onto its Coriolis acceleration."""
    fr = motion.frame(t, 1)
    shift = motion.generator - scalar_matrix(fr.lam)
    return (fr.matrix @ shift @ inverse(fr.matrix)).scale(2.0)


def second_matrix_derivative(motion: Motion, t: float) -> DualMat3:
    """H'' via the structured form H ((A - lam*I)**2 - lam'*I).

    Cross-checked against the binomial derivative stack; the two paths must
    agree to roundoff."""
    fr = motion.frame(t, 2)
    shift = motion.generator - scalar_matrix(fr.lam)
    structured = fr.matrix @ (shift @ shift - scalar_matrix(fr.lam_prime))
    stacked = fr.matrix_derivs[1]
    res = (structured - stacked).maxabs() / (1.0 + stacked.maxabs())
    if res > 1e-11:
        raise ArithmeticError(
            f"second-derivative paths disagree at t={t!r}: residual {res!r}")
    return structured


def degeneracy_invariants(motion: Motion, t: float) -> DegeneracyInvariants:
    fr = motion.frame(t, 2)
    lam, lamp = fr.lam, fr.lam_prime
    asq = motion.axis.alpha_sq
    mu = lam * lam - lamp
    branch_sq = (mu + asq) * (mu + asq) - asq * (lam * lam) * 4.0
    factor = mu * branch_sq
    shift = motion.generator - scalar_matrix(lam)
    d_direct = det(shift @ shift - scalar_matrix(lamp))
    res = (d_direct - factor).maxabs() / (1.0 + max(d_direct.maxabs(), factor.maxabs()))
    if res > 1e-9:
        raise ArithmeticError(
            f"degeneracy factorization violated at t={t!r}: residual {res!r}")
    return DegeneracyInvariants(lam=lam, lam_prime=lamp, mu=mu, alpha_sq=asq,
                                factor=factor, det_direct=d_direct)


def classify_degeneracy(inv: DegeneracyInvariants, tol: float = 1e-9,
                        det_small: bool = False) -> DegeneracyKind:
    """Which factor of the degeneracy determinant vanishes, if any.

    For a spacelike axis (alpha_sq.re > 0) the two branch factors
    mu + alpha_sq -/+ 2*alpha*lam are tested separately; for timelike or null
    axes only the squared combination is available and a vanishing value is
    reported as a merged branch."""
    lam, lamp, asq = inv.lam, inv.lam_prime, inv.alpha_sq
    s_mu = 1.0 + lam.maxabs() ** 2 + lamp.maxabs()
    if inv.mu.maxabs() <= tol * s_mu:
        return DegeneracyKind.MU_ZERO
    s_br = (1.0 + lam.maxabs() + math.sqrt(abs(asq.re)) + asq.maxabs()) ** 2
    if asq.re > tol:
        alpha = asq.sqrt()
        f_plus = inv.mu + asq - alpha * lam * 2.0
        f_minus = inv.mu + asq + alpha * lam * 2.0
        if f_plus.maxabs() <= tol * s_br or f_minus.maxabs() <= tol * s_br:
            return (DegeneracyKind.PLUS_BRANCH
                    if f_plus.maxabs() <= f_minus.maxabs()
                    else DegeneracyKind.MINUS_BRANCH)
    else:
        branch_sq = (inv.mu + asq) * (inv.mu + asq) - asq * (lam * lam) * 4.0
        if branch_sq.maxabs() <= tol * s_br * s_br:
            return DegeneracyKind.BRANCH_MERGED
    if det_small:
        return DegeneracyKind.NUMERICALLY_SINGULAR
    return DegeneracyKind.NONE


def acceleration_center(motion: Motion, t: float, tol: float = 1e-9) -> AccelCenterResult:
    """Solve H'' X = -C'' when H'' is regular; otherwise classify why not.

    Degeneracy is a result, not an error."""
    fr = motion.frame(t, 2)
    inv = degeneracy_invariants(motion, t)
    h_second = second_matrix_derivative(motion, t)
    d = det(h_second)
    c2 = fr.translation_derivs[2]
    threshold = tol * (1.0 + float(np.max(np.abs(h_second.re)))) ** 3
    if abs(d.re) > threshold:
        center = -(inverse(h_second) @ c2)
        residual = (h_second @ center + c2).maxabs()
        if residual <= max(tol, tol * center.maxabs()):
            return AccelCenterResult(invariants=inv, det_second=d, center=center,
                                     kind=DegeneracyKind.NONE, residual=residual)
        kind = DegeneracyKind.NUMERICALLY_SINGULAR
    else:
        kind = classify_degeneracy(inv, tol, det_small=True)
    return AccelCenterResult(invariants=inv, det_second=d, center=None, kind=kind)


# ---------------------------------------------------------------------------
# Exceptional scale-function families (no acceleration centre exists).
#
# Each family is constructed from its defining Riccati equation for
# lam = -h'/h rather than from the printed constant lists:
#   mu = 0            <=>  lam' = lam**2
#   plus branch       <=>  lam' = (lam - alpha)**2
#   minus branch      <=>  lam' = (lam + alpha)**2
# Solving lam and integrating h' = -lam*h in closed form keeps the result
# inside the term model and makes the corresponding determinant factor vanish
# identically, in both dual components.
# ---------------------------------------------------------------------------

AlphaLike = Union[float, DualScalar]


def _check_c0(c0: Optional[float], forced: float, name: str) -> None:
    if c0 is not None and abs(c0 - forced) > 1e-9 * (1.0 + abs(forced)):
        raise InvalidFamilyConstants(
            f"{name}: c0={c0!r} conflicts with the forced value {forced!r}")


def mu_zero_homothety(c2: float, c3: float, c1: float = 0.0, k: float = 0.0,
                      c0: Optional[float] = None) -> ScalarFunction:
    """Family with mu = 0: h = (c2*t + c3) + eps*(k*(t + c3/c2) + c1*c2).

    ``c1`` is the dual constant of lam = -1/(t+c0) + eps*c1/(t+c0)**2 and
    ``k`` the free dual integration constant.  The real part forces
    c0 = c3/c2."""
    if c2 == 0.0:
        raise InvalidFamilyConstants("mu-zero family needs c2 != 0 "
                                     "(otherwise the scale is constant)")
    forced_c0 = c3 / c2
    _check_c0(c0, forced_c0, "mu-zero family")
    return ScalarFunction.polynomial([
        DualScalar(c3, k * forced_c0 + c1 * c2),
        DualScalar(c2, k),
    ])


def plus_branch_homothety(alpha: AlphaLike, c7: float, c8: float = 0.0,
                          c1: float = 0.0, k: float = 0.0,
                          c0: Optional[float] = None) -> ScalarFunction:
    """Family with lam' = (lam - alpha)**2: real part (c7 + c8*t)*exp(-a1*t).

    ``alpha`` may carry a dual part; it enters the dual polynomial
    coefficients while the exponential rate stays real.  ``c1`` parameterizes
    the dual part of lam, ``k`` the dual integration constant."""
    a = DualScalar.of(alpha)
    if c8 == 0.0:
        if c7 == 0.0:
            raise InvalidFamilyConstants("branch family needs c7 or c8 nonzero")
        if c0 is not None:
            raise InvalidFamilyConstants("c0 is meaningless when c8 = 0")
        # lam = alpha.re, lam_dual = alpha.du + c1 constant
        return ScalarFunction.polynomial([
            DualScalar(c7, k),
            DualScalar(0.0, -(a.du + c1) * c7),
        ], rate=-a.re)
    forced_c0 = c7 / c8
    _check_c0(c0, forced_c0, "branch family")
    # lam = alpha - 1/(t+c0) + eps*c1/(t+c0)**2;
    # h_dual = exp(-a1*t)*(-c8*a1*_du*t*(t+c0) + c8*c1 + k*(t+c0))
    return ScalarFunction.polynomial([
        DualScalar(c7, c8 * c1 + k * forced_c0),
        DualScalar(c8, k - c8 * a.du * forced_c0),
        DualScalar(0.0, -c8 * a.du),
    ], rate=-a.re)


def minus_branch_homothety(alpha: AlphaLike, c14: float, c15: float = 0.0,
                           c1: float = 0.0, k: float = 0.0,
                           c0: Optional[float] = None) -> ScalarFunction:
    """Family with lam' = (lam + alpha)**2; the plus branch mirrored under
    alpha -> -alpha, so the real part is (c14 + c15*t)*exp(+a1*t)."""
    a = DualScalar.of(alpha)
    return plus_branch_homothety(-a, c14, c15, c1=c1, k=k, c0=c0)


_FAMILY_BUILDERS = {
    DegeneracyKind.MU_ZERO: ("c2", "c3"),
    DegeneracyKind.PLUS_BRANCH: ("c7", "c8"),
    DegeneracyKind.MINUS_BRANCH: ("c14", "c15"),
}


def exceptional_homothety(kind: Union[DegeneracyKind, str], alpha: AlphaLike = 0.0,
                          constants: Optional[dict] = None) -> ScalarFunction:
    """Dispatch to the family constructor named by ``kind``.

    ``constants`` uses the per-family keys (linear coefficients plus the
    dual constants ``c1`` and ``k`` and an optional consistency-checked
    ``c0``)."""
    if isinstance(kind, str):
        kind = DegeneracyKind(kind)
    if kind not in _FAMILY_BUILDERS:
        raise InvalidFamilyConstants(f"no exceptional family of kind {kind!r}")
    lead, slope = _FAMILY_BUILDERS[kind]
    c = dict(constants or {})
    allowed = {lead, slope, "c1", "k", "c0"}
    unknown = set(c) - allowed
    if unknown:
        raise InvalidFamilyConstants(f"unknown constants for {kind.value}: {sorted(unknown)}")
    common = dict(c1=c.get("c1", 0.0), k=c.get("k", 0.0), c0=c.get("c0"))
    if kind is DegeneracyKind.MU_ZERO:
        return mu_zero_homothety(c.get("c2", 1.0), c.get("c3", 1.0), **common)
    if kind is DegeneracyKind.PLUS_BRANCH:
        return plus_branch_homothety(alpha, c.get("c7", 1.0), c.get("c8", 0.0), **common)
    return minus_branch_homothety(alpha, c.get("c14", 1.0), c.get("c15", 0.0), **common)
