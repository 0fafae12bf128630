"""Dual Lorentzian homothetic exponential motions.

Dual-number and dual Lorentzian vector/matrix algebra, the motion map
Y = H(t) X + C(t) with H = h * exp(t*A), arbitrary-order velocities,
velocity/acceleration decompositions, pole points and curves, and the
acceleration-centre existence analysis.
"""

from .dual_scalar import DualPolynomial, DualScalar, ScalarFunction
from .lorentz import (CausalClass, DualVec3, UnitSphere, causal_class,
                      dual_cross, dual_inner, dual_norm, lorentz_cross,
                      lorentz_inner, on_unit_sphere)
from .dual_matrix import (AxisData, DualMat3, SIGN_MATRIX, axis_invariants, det,
                          expm, hat, inverse, is_lorentz_antisymmetric,
                          is_lorentz_orthogonal, is_nilpotent, scalar_matrix, vee)
from .motion import (ArcRatioReport, Motion, MotionFrame, MotionMode, PoleCurveNode,
                     PoleData, RegularityReport, VelocityDecomposition,
                     point_derivatives)
from .acceleration import (AccelCenterResult, AccelDecomposition, DegeneracyInvariants,
                           DegeneracyKind, acceleration_center, classify_degeneracy,
                           coriolis_operator, decompose_acceleration,
                           degeneracy_invariants, exceptional_homothety,
                           minus_branch_homothety, mu_zero_homothety,
                           plus_branch_homothety, second_matrix_derivative)
from .config_io import ConfigBundle, load_config, parse_config, save_config, serialize_config
from .verify import VerifyReport, format_report, run_verification
from . import errors

__version__ = "0.1.0"

__all__ = [
    "DualScalar", "DualPolynomial", "ScalarFunction",
    "DualVec3", "CausalClass", "UnitSphere", "causal_class", "dual_cross",
    "dual_inner", "dual_norm", "lorentz_cross", "lorentz_inner", "on_unit_sphere",
    "DualMat3", "AxisData", "SIGN_MATRIX", "axis_invariants", "det", "expm", "hat",
    "inverse", "is_lorentz_antisymmetric", "is_lorentz_orthogonal", "is_nilpotent",
    "scalar_matrix", "vee",
    "Motion", "MotionMode", "MotionFrame", "VelocityDecomposition", "PoleData",
    "RegularityReport", "PoleCurveNode", "ArcRatioReport", "point_derivatives",
    "AccelDecomposition", "DegeneracyInvariants", "DegeneracyKind",
    "AccelCenterResult", "acceleration_center", "classify_degeneracy",
    "coriolis_operator", "decompose_acceleration", "degeneracy_invariants",
    "exceptional_homothety", "mu_zero_homothety", "plus_branch_homothety",
    "minus_branch_homothety", "second_matrix_derivative",
    "ConfigBundle", "load_config", "parse_config", "save_config", "serialize_config",
    "VerifyReport", "format_report", "run_verification",
    "errors",
]
