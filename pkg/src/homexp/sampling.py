"""Randomized generators for scalars, generators and whole motions.

Used by the ``verify`` command and by the test suite.  Motions are kept at
desk scale: scale functions stay bounded away from zero on |t| <= 1.5 so
frames, poles and centres are well conditioned over the sampled windows.
"""

from __future__ import annotations

import numpy as np

from .dual_scalar import DualScalar, ScalarFunction
from .dual_matrix import DualMat3, hat
from .lorentz import DualVec3
from .motion import Motion, MotionMode


def random_dual(rng: np.random.Generator, span: float = 1.0) -> DualScalar:
    return DualScalar(float(rng.uniform(-span, span)), float(rng.uniform(-span, span)))


def random_dual_vec(rng: np.random.Generator, span: float = 1.0) -> DualVec3:
    return DualVec3(rng.uniform(-span, span, 3), rng.uniform(-span, span, 3))


def random_antisymmetric(rng: np.random.Generator, span: float = 1.0,
                         pure_dual: bool = False) -> DualMat3:
    w = random_dual_vec(rng, span)
    if pure_dual:
        w = DualVec3(np.zeros(3), w.du)
    return hat(w)


def random_scale_function(rng: np.random.Generator, with_rate: bool = True) -> ScalarFunction:
    """Non-constant scale with |h.re| >= ~0.8 on |t| <= 1.5."""
    a0 = float(rng.choice([-1.0, 1.0]) * rng.uniform(1.6, 2.6))
    a1 = float(rng.uniform(-0.25, 0.25))
    a2 = float(rng.uniform(-0.15, 0.15))
    b0 = float(rng.uniform(-0.5, 0.5))
    b1 = float(rng.uniform(-0.5, 0.5))
    rate = float(rng.uniform(-0.4, 0.4)) if with_rate else 0.0
    if abs(a1) + abs(a2) < 0.05 and rate == 0.0:
        a1 = 0.3  # keep the function non-constant
    return ScalarFunction.polynomial([DualScalar(a0, b0), DualScalar(a1, b1),
                                      DualScalar(a2, 0.0)], rate=rate)


def random_translation(rng: np.random.Generator) -> tuple[ScalarFunction, ...]:
    comps = []
    for i in range(3):
        coeffs = [DualScalar(float(rng.uniform(-1, 1)), float(rng.uniform(-1, 1)))
                  for _ in range(4)]
        if i == 0:
            coeffs[1] = DualScalar(coeffs[1].re + 1.0, coeffs[1].du)  # C' != 0
        comps.append(ScalarFunction.polynomial(coeffs))
    return tuple(comps)


def random_moving_point(rng: np.random.Generator) -> tuple[ScalarFunction, ...]:
    return tuple(ScalarFunction.polynomial(rng.uniform(-1, 1, 3).tolist())
                 for _ in range(3))


def random_motion(rng: np.random.Generator, nilpotent: bool = False,
                  cache_order: int = 8) -> Motion:
    gen = random_antisymmetric(rng, pure_dual=nilpotent)
    mode = MotionMode.NILPOTENT if nilpotent else MotionMode.GENERAL
    return Motion(random_scale_function(rng), gen, random_translation(rng),
                  mode=mode, cache_order=cache_order)
