import numpy as np
import pytest

from homexp import DualScalar, DualVec3


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def ds_close(a: DualScalar, b, tol: float = 1e-12) -> bool:
    b = DualScalar.of(b) if not isinstance(b, DualScalar) else b
    return abs(a.re - b.re) <= tol and abs(a.du - b.du) <= tol


def ds_close_rel(a: DualScalar, b: DualScalar, tol: float) -> bool:
    scale = 1.0 + max(a.maxabs(), b.maxabs())
    return (a - b).maxabs() <= tol * scale


def vec_close(a: DualVec3, b: DualVec3, tol: float = 1e-12) -> bool:
    return (a - b).maxabs() <= tol * (1.0 + max(a.maxabs(), b.maxabs()))


def mat_close(a, b, tol: float = 1e-12) -> bool:
    return (a - b).maxabs() <= tol * (1.0 + max(a.maxabs(), b.maxabs()))


def fd_scalar(f, t: float, step: float = 1e-5) -> DualScalar:
    """Central finite difference of a ScalarFunction, both dual components."""
    hi, lo = f(t + step), f(t - step)
    return DualScalar((hi.re - lo.re) / (2 * step), (hi.du - lo.du) / (2 * step))


def fd_vec(fn, t: float, step: float = 1e-5) -> DualVec3:
    """Central finite difference of a t -> DualVec3 map."""
    hi, lo = fn(t + step), fn(t - step)
    return DualVec3((hi.re - lo.re) / (2 * step), (hi.du - lo.du) / (2 * step))


def fd_mat(fn, t: float, step: float = 1e-5):
    """Central finite difference of a t -> DualMat3 map."""
    from homexp import DualMat3
    hi, lo = fn(t + step), fn(t - step)
    return DualMat3((hi.re - lo.re) / (2 * step), (hi.du - lo.du) / (2 * step))
