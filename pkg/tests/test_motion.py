import numpy as np
import pytest

from homexp import (DualMat3, DualScalar, DualVec3, Motion, MotionMode,
                    ScalarFunction, det, dual_norm, expm, hat, inverse)
from homexp.errors import NullVector, SingularHprime, ZeroRealPart
from homexp.motion import point_derivatives
from homexp.sampling import (random_antisymmetric, random_dual_vec, random_motion,
                             random_moving_point, random_translation)

from conftest import ds_close, ds_close_rel, fd_mat, fd_vec, mat_close, vec_close

E1, E2, E3 = np.eye(3)


def linear_scale(a=2.0, b=1.0):
    return ScalarFunction.polynomial([a, b])


def simple_translation():
    return (ScalarFunction.polynomial([0.0, 1.0]),
            ScalarFunction.constant(0.0),
            ScalarFunction.constant(0.0))


def nilpotent_example():
    """Pure-dual e3 axis, h = 2 + t, C = (t, 0, 0)."""
    gen = hat(DualVec3(np.zeros(3), E3))
    return Motion(linear_scale(), gen, simple_translation(), mode=MotionMode.NILPOTENT)


def leibniz_matrix_derivative(m: Motion, t: float, n: int) -> DualMat3:
    """Independent symbolic oracle for the n-th derivative of H = h*g.

    Maintains the derivative as a list of (coefficient function, generator
    power) pairs and applies the product rule with g' = A g only; no binomial
    formula involved."""
    state = [(m.scale, 0)]
    for _ in range(n):
        nxt = {}
        for f, k in state:
            for key, fn in ((k, f.derivative()), (k + 1, f)):
                nxt[key] = nxt[key] + fn if key in nxt else fn
        state = [(f, k) for k, f in nxt.items()]
    g = m.rotation(t)
    acc = DualMat3.zero()
    for f, k in state:
        power = DualMat3.identity()
        for _ in range(k):
            power = power @ m.generator
        acc = acc + power.scale(f(t))
    return acc @ g


class TestValidation:
    def test_rejects_constant_scale(self):
        with pytest.raises(ValueError, match="non-constant"):
            Motion(ScalarFunction.constant(2.0), hat(DualVec3(E1, np.zeros(3))),
                   simple_translation())

    def test_rejects_non_antisymmetric_generator(self):
        with pytest.raises(ValueError, match="anti-symmetric"):
            Motion(linear_scale(), DualMat3.identity(), simple_translation())

    def test_nilpotent_mode_needs_pure_dual_axis(self):
        with pytest.raises(ValueError, match="nilpotent"):
            Motion(linear_scale(), hat(DualVec3(E1, np.zeros(3))),
                   simple_translation(), mode=MotionMode.NILPOTENT)

    def test_rejects_constant_translation(self):
        trans = tuple(ScalarFunction.constant(c) for c in (1.0, 2.0, 3.0))
        with pytest.raises(ValueError, match="translation"):
            Motion(linear_scale(), hat(DualVec3(E1, np.zeros(3))), trans)


class TestFrame:
    def test_rotation_is_identity_at_zero(self, rng):
        m = random_motion(rng)
        fr = m.frame(0.0)
        assert np.array_equal(fr.rotation.re, np.eye(3))
        assert np.array_equal(fr.rotation.du, np.zeros((3, 3)))
        h0 = m.scale(0.0)
        assert mat_close(fr.matrix, DualMat3.identity().scale(h0), 0.0)

    def test_nilpotent_rotation_exact(self):
        m = nilpotent_example()
        t = 0.7
        fr = m.frame(t)
        exact = DualMat3.identity() + m.generator.scale(t)
        assert np.array_equal(fr.rotation.re, exact.re)
        assert np.array_equal(fr.rotation.du, exact.du)

    def test_lambda_value(self):
        m = nilpotent_example()  # h = 2 + t
        fr = m.frame(1.0)
        assert ds_close(fr.lam, DualScalar(-1.0 / 3.0, 0.0), 1e-15)

    def test_lambda_prime_vs_fd(self, rng):
        m = random_motion(rng)
        t, step = 0.4, 1e-5
        lp = m.frame(t).lam_prime
        lam_hi, lam_lo = m.frame(t + step).lam, m.frame(t - step).lam
        approx = DualScalar((lam_hi.re - lam_lo.re) / (2 * step),
                            (lam_hi.du - lam_lo.du) / (2 * step))
        assert ds_close_rel(lp, approx, 1e-8)

    def test_zero_scale_raises(self):
        m = Motion(ScalarFunction.polynomial([0.0, 1.0]), hat(DualVec3(E1, np.zeros(3))),
                   simple_translation())
        with pytest.raises(ZeroRealPart):
            m.frame(0.0)
        m.frame(1.0)  # fine away from the zero

    def test_matrix_is_scale_times_rotation(self, rng):
        for _ in range(5):
            m = random_motion(rng)
            t = float(rng.uniform(-1, 1))
            fr = m.frame(t)
            assert mat_close(fr.matrix, fr.rotation.scale(fr.scale), 0.0)


class TestTransforms:
    def test_coincident_frames_at_start(self):
        # h(0) = 1 and C(0) = 0 make the two coordinate systems coincide
        m = Motion(ScalarFunction.polynomial([1.0, 1.0]), hat(DualVec3(E1, np.zeros(3))),
                   simple_translation())
        x = DualVec3(np.array([0.3, -0.7, 1.1]), np.array([0.2, 0.0, -0.5]))
        assert vec_close(m.transform(0.0, x), x, 0.0)

    def test_zero_point_maps_to_translation(self, rng):
        m = random_motion(rng)
        t = 0.6
        y = m.transform(t, DualVec3.zero())
        assert vec_close(y, m.frame(t).translation, 0.0)

    def test_round_trip(self, rng):
        for _ in range(10):
            m = random_motion(rng)
            t = float(rng.uniform(-1, 1))
            x = random_dual_vec(rng)
            assert vec_close(m.inverse_transform(t, m.transform(t, x)), x, 1e-10)

    def test_translation_maps_back_to_origin(self, rng):
        m = random_motion(rng)
        t = 0.25
        x = m.inverse_transform(t, m.frame(t).translation)
        assert x.maxabs() <= 1e-12

    def test_standalone_scalar_solve(self):
        # unit test of the solver on H = 2I (a constant scale is not a valid
        # Motion, so exercise the matrix path directly)
        h = DualMat3.identity().scale(2.0)
        y = DualVec3(np.array([2.0, 4.0, 6.0]), np.array([0.0, 2.0, 0.0]))
        x = inverse(h) @ y
        assert vec_close(x, DualVec3(np.array([1.0, 2.0, 3.0]), np.array([0.0, 1.0, 0.0])), 0.0)


class TestMatrixDerivatives:
    def test_first_derivative_printed_form(self, rng):
        for _ in range(5):
            m = random_motion(rng)
            t = float(rng.uniform(-1, 1))
            fr = m.frame(t, 1)
            hp = m.scale.derivative()(t)
            expected = (fr.rotation.scale(hp)
                        + (m.generator @ fr.rotation).scale(fr.scale))
            assert mat_close(fr.matrix_derivs[0], expected, 1e-13)

    def test_second_derivative_printed_form(self, rng):
        m = random_motion(rng)
        t = 0.3
        fr = m.frame(t, 2)
        h, hp, hpp = (m.scale.nth_derivative(k)(t) for k in range(3))
        a = m.generator
        expected = (fr.rotation.scale(hpp)
                    + (a @ fr.rotation).scale(hp * 2.0)
                    + (a @ a @ fr.rotation).scale(h))
        assert mat_close(fr.matrix_derivs[1], expected, 1e-13)

    def test_third_derivative_vs_fd(self, rng):
        # first central difference of the exact second derivative
        for _ in range(5):
            m = random_motion(rng)
            t = float(rng.uniform(-0.5, 0.5))
            d3 = m.matrix_derivative(t, 3)
            approx = fd_mat(lambda s: m.matrix_derivative(s, 2), t, 1e-5)
            assert mat_close(d3, approx, 1e-7)

    def test_against_leibniz_oracle(self, rng):
        for _ in range(3):
            m = random_motion(rng)
            t = float(rng.uniform(-1, 1))
            for n in range(1, 5):
                assert mat_close(m.matrix_derivative(t, n),
                                 leibniz_matrix_derivative(m, t, n), 1e-11)

    def test_nilpotent_symbolic_entrywise(self, rng):
        # in nilpotent mode H(t) = h*(I + t*A) lives in the term model, so an
        # entrywise symbolic derivative is an exact independent oracle
        m = random_motion(rng, nilpotent=True)
        a = m.generator
        tpoly = ScalarFunction.polynomial([0.0, 1.0])
        for n in (1, 2, 3, 4):
            t = 0.37
            got = m.matrix_derivative(t, n)
            for i in range(3):
                for j in range(3):
                    f = m.scale.scale(1.0 if i == j else 0.0)
                    f = f + (m.scale * tpoly).scale(DualScalar(a.re[i, j], a.du[i, j]))
                    val = f.nth_derivative(n)(t)
                    assert abs(val.re - got.re[i, j]) <= 1e-11 * (1 + abs(val.re))
                    assert abs(val.du - got.du[i, j]) <= 1e-11 * (1 + abs(val.du))


class TestTrajectoryDerivatives:
    def test_constant_point_first_order(self, rng):
        m = random_motion(rng)
        t, x = 0.4, random_dual_vec(rng)
        fr = m.frame(t, 1)
        expected = fr.matrix_derivs[0] @ x + fr.translation_derivs[1]
        assert vec_close(m.trajectory_derivative(t, x, 1), expected, 0.0)

    def test_nilpotent_second_order_printed_form(self, rng):
        # sliding acceleration (h''g + 2h'A)X + C'' in the nilpotent regime
        m = random_motion(rng, nilpotent=True)
        t, x = 0.2, random_dual_vec(rng)
        fr = m.frame(t, 2)
        hp, hpp = m.scale.derivative()(t), m.scale.nth_derivative(2)(t)
        reduced = (fr.rotation.scale(hpp) + m.generator.scale(hp * 2.0)) @ x \
            + fr.translation_derivs[2]
        assert vec_close(m.trajectory_derivative(t, x, 2), reduced, 1e-12)

    def test_moving_point_vs_fd(self, rng):
        for _ in range(5):
            m = random_motion(rng)
            x = random_moving_point(rng)
            t = float(rng.uniform(-0.5, 0.5))
            # cascade: first difference of the exact (n-1)-th derivative
            for n in range(1, 5):
                if n == 1:
                    approx = fd_vec(lambda s: m.transform(s, x), t, 1e-5)
                else:
                    approx = fd_vec(lambda s, k=n - 1: m.trajectory_derivative(s, x, k),
                                    t, 1e-5)
                got = m.trajectory_derivative(t, x, n)
                assert vec_close(got, approx, 1e-7)

    def test_point_derivatives_helper(self, rng):
        x = random_dual_vec(rng)
        derivs = point_derivatives(x, 0.5, 3)
        assert len(derivs) == 4
        assert vec_close(derivs[0], x, 0.0)
        assert all(d.maxabs() == 0.0 for d in derivs[1:])


class TestVelocity:
    def test_constant_point_reduces_to_sliding(self, rng):
        m = random_motion(rng)
        v = m.velocity(0.3, random_dual_vec(rng))
        assert v.relative.maxabs() == 0.0
        assert vec_close(v.absolute, v.sliding, 0.0)

    def test_absolute_matches_first_trajectory_derivative(self, rng):
        for _ in range(5):
            m = random_motion(rng)
            x = random_moving_point(rng)
            t = float(rng.uniform(-1, 1))
            v = m.velocity(t, x)
            assert vec_close(v.absolute, m.trajectory_derivative(t, x, 1), 1e-12)
            assert vec_close(v.absolute, v.sliding + v.relative, 0.0)

    def test_nilpotent_sliding_printed_form(self, rng):
        # (h'g + hA)X + C' must equal H'X + C' when A g = A
        m = random_motion(rng, nilpotent=True)
        t, x = 0.5, random_dual_vec(rng)
        fr = m.frame(t, 1)
        hp = m.scale.derivative()(t)
        reduced = (fr.rotation.scale(hp) + m.generator.scale(fr.scale)) @ x \
            + fr.translation_derivs[1]
        assert vec_close(m.velocity(t, x).sliding, reduced, 1e-12)

    def test_nilpotent_generator_absorbs_rotation(self, rng):
        m = random_motion(rng, nilpotent=True)
        for t in (-1.3, 0.2, 2.4):
            g = m.rotation(t)
            prod = m.generator @ g
            assert np.array_equal(prod.re, m.generator.re)
            assert np.array_equal(prod.du, m.generator.du)


class TestRegularity:
    def test_internal_consistency(self, rng):
        for _ in range(10):
            m = random_motion(rng)
            rep = m.regularity(float(rng.uniform(-1, 1)))
            assert rep.residual_factorization <= 1e-12
            assert rep.residual_char <= 1e-12

    def test_generic_motion_regular(self, rng):
        m = Motion(ScalarFunction.polynomial([2.0, 1.0]), hat(DualVec3(E1, np.zeros(3))),
                   random_translation(rng))
        rep = m.regularity(0.0)
        assert not rep.singular
        # det(A - lam*I) = -lam*(lam**2 - alpha_sq): lam = -1/2, alpha_sq = 1
        lam = rep.det_shift
        assert ds_close(lam, DualScalar(0.5 * (0.25 - 1.0), 0.0), 1e-14)

    def test_singular_at_scale_critical_point(self, rng):
        # h' = 0 makes lam = 0 and det H' = h**3 det(A), which vanishes for
        # anti-symmetric A
        h = ScalarFunction.polynomial([2.0, 0.0, 1.0])  # h' = 2t, critical at 0
        m = Motion(h, hat(DualVec3(E1, np.zeros(3))), random_translation(rng))
        assert m.regularity(0.0).singular
        assert not m.regularity(0.8).singular
        with pytest.raises(SingularHprime):
            m.pole(0.0)

    def test_exponential_scale_factorization(self, rng):
        m = Motion(ScalarFunction.polynomial([1.0], rate=1.0),
                   hat(DualVec3(E1, np.zeros(3))), random_translation(rng))
        rep = m.regularity(0.0)
        assert ds_close(rep.lam if hasattr(rep, "lam") else m.frame(0.0).lam,
                        DualScalar(-1.0, 0.0), 1e-14)
        assert rep.residual_factorization <= 1e-12


class TestPoles:
    def test_sliding_vanishes_at_pole(self, rng):
        for _ in range(10):
            m = random_motion(rng)
            t = float(rng.uniform(-0.8, 0.8))
            p = m.pole(t)
            v = m.velocity(t, p.moving)
            scale = 1.0 + m.frame(t, 1).translation_derivs[1].maxabs()
            assert v.sliding.maxabs() / scale <= 1e-9

    def test_fixed_pole_reconstruction(self, rng):
        for _ in range(10):
            m = random_motion(rng)
            t = float(rng.uniform(-0.8, 0.8))
            p = m.pole(t)
            fr = m.frame(t, 1)
            assert vec_close(fr.matrix @ p.moving + fr.translation, p.fixed, 1e-12)

    def test_nilpotent_closed_form(self):
        # axis eps*e3, h = 2 + t, C = (t, 0, 0):
        # H' = I + (2 + 2t) A, so P.re = -e1 and P.du = -(2 + 2t)*hat(e3)(-e1)
        m = nilpotent_example()
        for t in (0.0, 0.5, 1.0):
            p = m.pole(t)
            assert np.allclose(p.moving.re, -E1, atol=1e-14)
            assert np.allclose(p.moving.du, np.array([0.0, -(2 + 2 * t), 0.0]), atol=1e-13)
            fr = m.frame(t, 1)
            residual = fr.matrix_derivs[0] @ p.moving + fr.translation_derivs[1]
            assert residual.maxabs() <= 1e-13

    def test_pole_curve_tangency(self, rng):
        for _ in range(5):
            m = random_motion(rng)
            nodes = m.pole_curves(-0.5, 0.5, 11)
            assert len(nodes) == 11
            for node in nodes:
                assert vec_close(node.fixed_tangent, node.mapped_tangent, 1e-8)

    def test_moving_tangent_vs_fd(self, rng):
        m = random_motion(rng)
        t = 0.2
        node = m.pole_curves(t, t, 1)[0]
        approx = fd_vec(lambda s: m.pole(s).moving, t, 1e-6)
        assert vec_close(node.moving_tangent, approx, 1e-6)

    def test_single_sample_matches_pole(self, rng):
        m = random_motion(rng)
        node = m.pole_curves(0.3, 0.3, 1)[0]
        p = m.pole(0.3)
        assert vec_close(node.pole.moving, p.moving, 1e-14)
        assert vec_close(node.pole.fixed, p.fixed, 1e-14)

    def test_constant_pole_motion(self):
        # translation chosen so C' = -H' e1 identically: P stays at e1 and
        # both tangents vanish
        gen = hat(DualVec3(np.zeros(3), E3))
        h = linear_scale()  # 2 + t, so H' = I + (2 + 2t) A
        # -H' e1 = (-1, eps*(2 + 2t), 0), integrated componentwise
        c1 = ScalarFunction.polynomial([0.0, -1.0])
        c2 = ScalarFunction.polynomial([[0.0, 0.0], [0.0, 2.0], [0.0, 1.0]])
        c3 = ScalarFunction.constant(0.0)
        m = Motion(h, gen, (c1, c2, c3), mode=MotionMode.NILPOTENT)
        for node in m.pole_curves(0.0, 1.0, 5):
            assert np.allclose(node.pole.moving.re, E1, atol=1e-13)
            assert node.moving_tangent.maxabs() <= 1e-12
            assert node.fixed_tangent.maxabs() <= 1e-12


class TestArcRatio:
    def test_norm_scaling_with_dual_constant_scale(self, rng):
        # algebra-level check: ||c * g v|| = |c| * ||v|| in real part for a
        # dual scalar c = 1 + eps*k and Lorentz-orthogonal g
        c = DualScalar(1.0, 0.7)
        for _ in range(20):
            a = random_antisymmetric(rng)
            g = expm(0.8, a)
            v = random_dual_vec(rng)
            try:
                nv = dual_norm(v)
                nscaled = dual_norm((g @ v) * c)
            except NullVector:
                continue
            assert abs(nscaled.re - abs(c).re * nv.re) <= 1e-10 * (1 + nv.re)

    def test_pointwise_ratio_matches_scale_abs(self, rng):
        found = 0
        while found < 4:
            m = random_motion(rng)
            try:
                report = m.pole_arc_ratio(-0.4, 0.4, 9)
            except NullVector:
                continue
            found += 1
            for ratio, habs in zip(report.ratios, report.scale_abs):
                assert abs(ratio.re - habs.re) <= 1e-8 * (1 + abs(habs.re))

    def test_zero_length_interval(self, rng):
        m = random_motion(rng)
        report = m.pole_arc_ratio(0.3, 0.3, 4)
        assert report.fixed_arc.maxabs() == 0.0
        assert report.moving_arc.maxabs() == 0.0

    def test_arc_integrals_consistent_with_ratio(self, rng):
        m = random_motion(rng)
        try:
            report = m.pole_arc_ratio(-0.3, 0.3, 33)
        except NullVector:
            pytest.skip("null tangent for this draw")
        # |h| is bounded on the window, so the arc ratio lies between the
        # extremes of the pointwise ratio real parts
        ratios = [r.re for r in report.ratios]
        quot = report.fixed_arc.re / report.moving_arc.re
        assert min(ratios) - 1e-9 <= quot <= max(ratios) + 1e-9
