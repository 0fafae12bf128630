"""Motion configuration files: JSON schema, validation, serialization.

A config carries the motion mode, the generator axis (two 3-arrays), the
scale function and translation components as term records, a list of probe
points, and a free-form string metadata map.  Loading re-checks every motion
invariant and reports violations with their field path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .dual_scalar import ScalarFunction
from .dual_matrix import hat, is_lorentz_antisymmetric, is_nilpotent, vee
from .errors import ParseError, ValidationError
from .lorentz import DualVec3
from .motion import Motion, MotionMode


@dataclass
class ConfigBundle:
    motion: Motion
    points: list[DualVec3]
    meta: dict[str, str] = field(default_factory=dict)


def _require(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise ValidationError(path, message)


def _number(value, path: str) -> float:
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             path, f"expected a number, got {type(value).__name__}")
    x = float(value)
    _require(np.isfinite(x), path, "number must be finite")
    return x


def _vec3(value, path: str) -> np.ndarray:
    _require(isinstance(value, list) and len(value) == 3,
             path, "expected an array of 3 numbers")
    return np.array([_number(v, f"{path}[{i}]") for i, v in enumerate(value)])


def _dual_vec(value, path: str) -> DualVec3:
    _require(isinstance(value, dict), path, "expected an object with 're' and 'du'")
    unknown = set(value) - {"re", "du"}
    _require(not unknown, path, f"unknown keys {sorted(unknown)}")
    _require("re" in value, path, "missing key 're'")
    re = _vec3(value["re"], f"{path}.re")
    du = _vec3(value.get("du", [0.0, 0.0, 0.0]), f"{path}.du")
    return DualVec3(re, du)


def _coeff_pairs(value, path: str) -> list[list[float]]:
    _require(isinstance(value, list) and len(value) >= 1,
             path, "expected a non-empty array of [re, du] pairs")
    out = []
    for i, pair in enumerate(value):
        p = f"{path}[{i}]"
        _require(isinstance(pair, list) and len(pair) == 2,
                 p, "expected a [re, du] pair")
        out.append([_number(pair[0], f"{p}[0]"), _number(pair[1], f"{p}[1]")])
    return out


def _scalar_function(value, path: str) -> ScalarFunction:
    _require(isinstance(value, list) and len(value) >= 1,
             path, "expected a non-empty array of term records")
    records = []
    for i, term in enumerate(value):
        p = f"{path}[{i}]"
        _require(isinstance(term, dict), p, "expected a term object")
        unknown = set(term) - {"num", "den", "rate"}
        _require(not unknown, p, f"unknown keys {sorted(unknown)}")
        _require("num" in term, p, "missing key 'num'")
        rec = {"num": _coeff_pairs(term["num"], f"{p}.num"),
               "rate": _number(term.get("rate", 0.0), f"{p}.rate")}
        if "den" in term:
            rec["den"] = _coeff_pairs(term["den"], f"{p}.den")
            _require(rec["den"][-1][0] != 0.0, f"{p}.den",
                     "leading denominator coefficient must have a nonzero real part")
        records.append(rec)
    return ScalarFunction.from_records(records)


def parse_config(data: dict, source: str = "<config>") -> ConfigBundle:
    """Validate a parsed JSON object and build the motion."""
    _require(isinstance(data, dict), "$", "top level must be an object")
    unknown = set(data) - {"mode", "axis", "h", "translation", "points", "meta"}
    _require(not unknown, "$", f"unknown keys {sorted(unknown)}")
    for key in ("mode", "axis", "h", "translation"):
        _require(key in data, key, "missing required key")

    mode_raw = data["mode"]
    _require(isinstance(mode_raw, str), "mode", "expected a string")
    try:
        mode = MotionMode(mode_raw.lower())
    except ValueError:
        raise ValidationError("mode", f"must be 'general' or 'nilpotent', got {mode_raw!r}")

    axis = _dual_vec(data["axis"], "axis")
    generator = hat(axis)
    _require(is_lorentz_antisymmetric(generator), "axis",
             "hat(axis) is not Lorentz anti-symmetric")  # structural, cheap re-check
    if mode is MotionMode.NILPOTENT:
        _require(is_nilpotent(generator), "mode",
                 "nilpotent mode requires the generator square to vanish "
                 "(axis real part must be zero)")

    h = _scalar_function(data["h"], "h")
    _require(not h.is_constant(), "h",
             "scale function must be non-constant in t (constant scale "
             "degenerates to an affine map)")

    trans_raw = data["translation"]
    _require(isinstance(trans_raw, list) and len(trans_raw) == 3,
             "translation", "expected an array of 3 term-record arrays")
    translation = tuple(_scalar_function(c, f"translation[{i}]")
                        for i, c in enumerate(trans_raw))
    _require(not all(c.derivative().is_identically_zero() for c in translation),
             "translation", "translation derivative must not vanish identically")

    points_raw = data.get("points", [])
    _require(isinstance(points_raw, list), "points", "expected an array")
    points = [_dual_vec(p, f"points[{i}]") for i, p in enumerate(points_raw)]

    meta_raw = data.get("meta", {})
    _require(isinstance(meta_raw, dict), "meta", "expected an object")
    meta = {}
    for key, val in meta_raw.items():
        _require(isinstance(val, str), f"meta.{key}", "expected a string value")
        meta[str(key)] = val

    try:
        motion = Motion(h, generator, translation, mode=mode)
    except ValueError as exc:
        raise ValidationError("$", str(exc)) from exc
    return ConfigBundle(motion=motion, points=points, meta=meta)


def load_config(path: str) -> ConfigBundle:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, col=exc.colno) from exc
    return parse_config(data, source=path)


def serialize_config(bundle: ConfigBundle) -> dict:
    """Config dict reproducing the bundle (field order fixed, den always emitted)."""
    axis = vee(bundle.motion.generator)
    return {
        "mode": bundle.motion.mode.value,
        "axis": {"re": axis.re.tolist(), "du": axis.du.tolist()},
        "h": bundle.motion.scale.to_records(),
        "translation": [c.to_records() for c in bundle.motion.translation],
        "points": [{"re": p.re.tolist(), "du": p.du.tolist()} for p in bundle.points],
        "meta": dict(bundle.meta),
    }


def save_config(path: str, bundle: ConfigBundle) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(serialize_config(bundle), fh, indent=2)
        fh.write("\n")
