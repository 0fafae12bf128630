"""Randomized invariant suite behind the ``verify`` CLI command.

Each group exercises one family of algebraic identities on seeded random
inputs and reports its worst (relative) residual.  All identities here are
exact in exact arithmetic, so the default tolerance of 1e-8 leaves several
orders of magnitude of headroom over double-precision roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .acceleration import (acceleration_center, classify_degeneracy, coriolis_operator,
                           decompose_acceleration, degeneracy_invariants,
                           minus_branch_homothety, mu_zero_homothety,
                           plus_branch_homothety, second_matrix_derivative,
                           DegeneracyKind)
from .dual_scalar import DualScalar
from .dual_matrix import (DualMat3, axis_invariants, det, expm, hat,
                          scalar_matrix, SIGN_MATRIX)
from .lorentz import DualVec3, dual_cross, dual_inner, lorentz_cross, lorentz_inner
from .motion import Motion
from .sampling import (random_antisymmetric, random_dual, random_dual_vec,
                       random_motion, random_moving_point, random_translation)


@dataclass(frozen=True)
class GroupResult:
    name: str
    residual: float
    passed: bool


@dataclass(frozen=True)
class VerifyReport:
    seed: int
    tol: float
    groups: tuple[GroupResult, ...]

    @property
    def passed(self) -> bool:
        return all(g.passed for g in self.groups)


def _rel(a, b) -> float:
    return (a - b).maxabs() / (1.0 + max(a.maxabs(), b.maxabs()))


def _check_dual_ring(rng: np.random.Generator, motions) -> float:
    worst = 0.0
    for _ in range(400):
        a, b, c = (random_dual(rng, 2.0) for _ in range(3))
        worst = max(worst, _rel((a * b) * c, a * (b * c)))
        worst = max(worst, _rel(a * (b + c), a * b + a * c))
        if abs(b.re) > 0.1:
            worst = max(worst, _rel((a * b) / b, a))
    return worst


def _check_metric_cross(rng: np.random.Generator, motions) -> float:
    worst = 0.0
    basis = np.eye(3)
    expected = np.diag([1.0, 1.0, -1.0])
    for i in range(3):
        for j in range(3):
            worst = max(worst, abs(lorentz_inner(basis[i], basis[j]) - expected[i, j]))
    for _ in range(300):
        a, b = rng.uniform(-2, 2, 3), rng.uniform(-2, 2, 3)
        c = lorentz_cross(a, b)
        scale = 1.0 + float(np.max(np.abs(c)))
        worst = max(worst, abs(lorentz_inner(c, a)) / scale,
                    abs(lorentz_inner(c, b)) / scale)
        worst = max(worst, float(np.max(np.abs(c + lorentz_cross(b, a)))) / scale)
        da, db = random_dual_vec(rng), random_dual_vec(rng)
        worst = max(worst, _rel(dual_inner(da, db), dual_inner(db, da)))
        worst = max(worst, dual_cross(da, da).maxabs())
    return worst


def _check_exponential(rng: np.random.Generator, motions) -> float:
    worst = 0.0
    sign = DualMat3.of(SIGN_MATRIX)
    ident = DualMat3.identity()
    for _ in range(25):
        a = random_antisymmetric(rng)
        for t in (0.1, 1.0, 2.0):
            g = expm(t, a)
            worst = max(worst, (sign @ g.T @ sign @ g - ident).maxabs())
            worst = max(worst, _rel(det(g), DualScalar(1.0)))
        s, t = rng.uniform(-1.5, 1.5, 2)
        worst = max(worst, (expm(s + t, a) - expm(s, a) @ expm(t, a)).maxabs())
        g = expm(float(t), a)
        worst = max(worst, (a @ g - g @ a).maxabs())
    return worst


def _check_structure(rng: np.random.Generator, motions) -> float:
    # H' = H(A - lam*I); det factorization; structured H''
    worst = 0.0
    for m in motions:
        for t in rng.uniform(-1.0, 1.0, 4):
            fr = m.frame(float(t), 2)
            shift = m.generator - scalar_matrix(fr.lam)
            hp = fr.matrix @ shift
            worst = max(worst, (hp - fr.matrix_derivs[0]).maxabs()
                        / (1.0 + fr.matrix_derivs[0].maxabs()))
            rep = m.regularity(float(t))
            worst = max(worst, rep.residual_factorization, rep.residual_char)
            hs = second_matrix_derivative(m, float(t))
            worst = max(worst, (hs - fr.matrix_derivs[1]).maxabs()
                        / (1.0 + hs.maxabs()))
    return worst


def _check_poles(rng: np.random.Generator, motions) -> float:
    worst = 0.0
    for m in motions:
        for t in rng.uniform(-0.8, 0.8, 3):
            p = m.pole(float(t))
            v = m.velocity(float(t), p.moving)
            fr = m.frame(float(t), 1)
            scale = 1.0 + fr.translation_derivs[1].maxabs()
            worst = max(worst, v.sliding.maxabs() / scale)
            q = fr.matrix @ p.moving + fr.translation
            worst = max(worst, (q - p.fixed).maxabs() / (1.0 + q.maxabs()))
        for node in m.pole_curves(-0.5, 0.5, 8):
            worst = max(worst, (node.fixed_tangent - node.mapped_tangent).maxabs()
                        / (1.0 + node.mapped_tangent.maxabs()))
    return worst


def _check_arc_ratio(rng: np.random.Generator, motions) -> float:
    from .errors import NullVector
    worst = 0.0
    checked = 0
    for m in motions:
        try:
            report = m.pole_arc_ratio(-0.4, 0.4, 9)
        except NullVector:
            continue
        for ratio, habs, node in zip(report.ratios, report.scale_abs, report.ts):
            # real parts must match |h| regardless of the tangent's causal class
            worst = max(worst, abs(ratio.re - habs.re) / (1.0 + abs(habs.re)))
            checked += 1
    return worst if checked else float("nan")


def _check_acceleration(rng: np.random.Generator, motions) -> float:
    worst = 0.0
    for m in motions:
        x = random_moving_point(rng)
        for t in rng.uniform(-0.8, 0.8, 3):
            acc = decompose_acceleration(m, float(t), x)
            total = acc.sliding + acc.relative + acc.coriolis
            worst = max(worst, (acc.absolute - total).maxabs() / (1.0 + acc.absolute.maxabs()))
            y2 = m.trajectory_derivative(float(t), x, 2)
            worst = max(worst, (acc.absolute - y2).maxabs() / (1.0 + y2.maxabs()))
            omega = coriolis_operator(m, float(t))
            vel = m.velocity(float(t), x)
            worst = max(worst, (omega @ vel.relative - acc.coriolis).maxabs()
                        / (1.0 + acc.coriolis.maxabs()))
            y1 = m.trajectory_derivative(float(t), x, 1)
            worst = max(worst, (vel.absolute - y1).maxabs() / (1.0 + y1.maxabs()))
    return worst


def _check_degeneracy_factorization(rng: np.random.Generator, motions) -> float:
    worst = 0.0
    for _ in range(250):
        a = random_antisymmetric(rng)
        lam, lamp = random_dual(rng, 2.0), random_dual(rng, 2.0)
        shift = a - scalar_matrix(lam)
        d = det(shift @ shift - scalar_matrix(lamp))
        asq = axis_invariants(a).alpha_sq
        mu = lam * lam - lamp
        factor = mu * ((mu + asq) * (mu + asq) - asq * (lam * lam) * 4.0)
        worst = max(worst, _rel(d, factor))
    return worst


def _check_families(rng: np.random.Generator, motions) -> float:
    worst = 0.0
    trans = random_translation(rng)
    cases = []
    h = mu_zero_homothety(1.0, 2.0, c1=0.4, k=0.2)
    cases.append((h, random_antisymmetric(rng), DegeneracyKind.MU_ZERO))
    alpha = DualScalar(1.1, 0.3)
    axis = DualVec3(alpha.re * np.array([1.0, 0, 0]), alpha.du * np.array([1.0, 0, 0]))
    cases.append((plus_branch_homothety(alpha, 1.0, 0.5, c1=0.2, k=0.1),
                  hat(axis), DegeneracyKind.PLUS_BRANCH))
    cases.append((minus_branch_homothety(alpha, 1.0, 0.5, c1=0.2, k=0.1),
                  hat(axis), DegeneracyKind.MINUS_BRANCH))
    for h, gen, kind in cases:
        m = Motion(h, gen, trans)
        for t in (0.1, 0.5, 1.1):
            res = acceleration_center(m, t)
            scale = (1.0 + float(np.max(np.abs(second_matrix_derivative(m, t).re)))) ** 3
            worst = max(worst, abs(res.det_second.re) / scale)
            if res.kind is not kind:
                worst = max(worst, 1.0)
    # generic motions must produce a centre with a small plug-back residual
    for m in motions[:3]:
        res = acceleration_center(m, 0.3)
        if res.has_center:
            worst = max(worst, res.residual / (1.0 + res.center.maxabs()))
        else:
            inv = degeneracy_invariants(m, 0.3)
            if classify_degeneracy(inv) is DegeneracyKind.NONE:
                worst = max(worst, 1.0)
    return worst


def _check_nilpotency(rng: np.random.Generator, motions) -> float:
    worst = 0.0
    ident = DualMat3.identity()
    for _ in range(40):
        a = random_antisymmetric(rng, pure_dual=True)
        t = float(rng.uniform(-2, 2))
        g = expm(t, a)
        exact = ident + a.scale(t)
        worst = max(worst, (g - exact).maxabs())
        worst = max(worst, (a @ g - a).maxabs())
        b = random_antisymmetric(rng)
        if float(np.max(np.abs(b.re))) > 1e-3 and (b @ b).maxabs() < 1e-12:
            worst = max(worst, 1.0)  # characterization violated
    return worst


CHECKS: tuple[tuple[str, Callable], ...] = (
    ("dual-ring axioms", _check_dual_ring),
    ("metric and cross-product coherence", _check_metric_cross),
    ("exponential orthogonality and group law", _check_exponential),
    ("derivative structure identities", _check_structure),
    ("pole plug-back and tangency", _check_poles),
    ("pole-curve arc ratio", _check_arc_ratio),
    ("acceleration split and coriolis", _check_acceleration),
    ("degeneracy determinant factorization", _check_degeneracy_factorization),
    ("exceptional families and centres", _check_families),
    ("nilpotent generator characterization", _check_nilpotency),
)


def run_verification(seed: int = 0, tol: float = 1e-8,
                     motion: Optional[Motion] = None) -> VerifyReport:
    rng = np.random.default_rng(seed)
    motions = [random_motion(rng) for _ in range(4)]
    motions.append(random_motion(rng, nilpotent=True))
    if motion is not None:
        motions.insert(0, motion)
    groups = []
    for name, fn in CHECKS:
        residual = float(fn(rng, motions))
        groups.append(GroupResult(name=name, residual=residual,
                                  passed=residual <= tol))
    return VerifyReport(seed=seed, tol=tol, groups=tuple(groups))


def format_report(report: VerifyReport) -> str:
    lines = [f"verification seed={report.seed} tol={report.tol:.3e}"]
    for g in report.groups:
        status = "PASS" if g.passed else "FAIL"
        lines.append(f"{status}  {g.name:<42s} worst residual {g.residual:.3e}")
    lines.append("RESULT: " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines)
