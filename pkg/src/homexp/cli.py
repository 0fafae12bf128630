"""Command-line interface: trajectory sweeps, pole curves, acceleration
centres, and the randomized invariant verifier.

Every sweep command samples [t0, t1], emits one record per node in t-order
(CSV or JSON), and never drops a failed node silently: singular or
out-of-domain nodes become status rows.  Exit codes: 0 success, 1 verify
failure, 2 config error, 3 every node failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

from .acceleration import acceleration_center, decompose_acceleration
from .config_io import ConfigBundle, load_config
from .dual_matrix import det
from .errors import HomexpError, ParseError, PoleAtT, SingularHprime, ValidationError, ZeroRealPart
from .motion import Motion
from .verify import format_report, run_verification

_VEC_FIELDS = ("re1", "re2", "re3", "du1", "du2", "du3")


def _vec_cols(prefix: str) -> list[str]:
    return [f"{prefix}{f}" for f in _VEC_FIELDS]


def _put_vec(rec: dict, prefix: str, v) -> None:
    for i in range(3):
        rec[f"{prefix}re{i + 1}"] = float(v.re[i])
        rec[f"{prefix}du{i + 1}"] = float(v.du[i])


def _nan_vec(rec: dict, prefix: str) -> None:
    for f in _VEC_FIELDS:
        rec[f"{prefix}{f}"] = float("nan")


def _status_of(exc: Exception) -> str:
    if isinstance(exc, PoleAtT):
        return "POLE_AT_T"
    if isinstance(exc, ZeroRealPart):
        return "ZERO_SCALE"
    if isinstance(exc, SingularHprime):
        return "SINGULAR_HPRIME"
    raise exc


def _pick_point(bundle: ConfigBundle, index: int):
    if not bundle.points:
        raise ValidationError("points", "this command needs at least one point")
    if not 0 <= index < len(bundle.points):
        raise ValidationError("points", f"point index {index} out of range "
                                        f"(config has {len(bundle.points)})")
    return bundle.points[index]


def _evaluate_node(motion: Motion, point, order: int, t: float) -> dict:
    rec = {"t": t}
    try:
        y = (motion.transform(t, point) if order == 0
             else motion.trajectory_derivative(t, point, order))
        _put_vec(rec, "Y", y)
        rec["status"] = "OK"
    except HomexpError as exc:
        _nan_vec(rec, "Y")
        rec["status"] = _status_of(exc)
    return rec


def _velocities_node(motion: Motion, point, order: int, t: float) -> dict:
    rec = {"t": t}
    try:
        v = motion.velocity(t, point)
        _put_vec(rec, "Va", v.absolute)
        _put_vec(rec, "Vf", v.sliding)
        _put_vec(rec, "Vr", v.relative)
        rec["status"] = "OK"
    except HomexpError as exc:
        for p in ("Va", "Vf", "Vr"):
            _nan_vec(rec, p)
        rec["status"] = _status_of(exc)
    return rec


def _poles_node(motion: Motion, point, order: int, t: float) -> dict:
    rec = {"t": t}
    try:
        fr = motion.frame(t, 1)
        d = det(fr.matrix_derivs[0])
        rec_det = (float(d.re), float(d.du))
        pole = motion.pole(t)
        # internal consistency: the fixed-frame pole must reconstruct exactly
        q = fr.matrix @ pole.moving + fr.translation
        res = (q - pole.fixed).maxabs()
        if res > 1e-9 * (1.0 + q.maxabs()):
            raise ArithmeticError(f"pole reconstruction failed at t={t!r}")
        _put_vec(rec, "P", pole.moving)
        _put_vec(rec, "Q", pole.fixed)
        rec["detHp_re"], rec["detHp_du"] = rec_det
        rec["status"] = "OK"
    except HomexpError as exc:
        _nan_vec(rec, "P")
        _nan_vec(rec, "Q")
        try:
            d = det(motion.frame(t, 1).matrix_derivs[0])
            rec["detHp_re"], rec["detHp_du"] = float(d.re), float(d.du)
        except HomexpError:
            rec["detHp_re"] = rec["detHp_du"] = float("nan")
        rec["status"] = _status_of(exc)
    return rec


def _accel_node(motion: Motion, point, order: int, t: float) -> dict:
    rec = {"t": t}
    try:
        a = decompose_acceleration(motion, t, point)
        _put_vec(rec, "Ga", a.absolute)
        _put_vec(rec, "Gf", a.sliding)
        _put_vec(rec, "Gr", a.relative)
        _put_vec(rec, "Gc", a.coriolis)
        rec["status"] = "OK"
    except HomexpError as exc:
        for p in ("Ga", "Gf", "Gr", "Gc"):
            _nan_vec(rec, p)
        rec["status"] = _status_of(exc)
    return rec


def _centers_node(motion: Motion, point, order: int, t: float, tol: float) -> dict:
    rec = {"t": t}
    try:
        result = acceleration_center(motion, t, tol=tol)
        inv = result.invariants
        if result.has_center:
            _put_vec(rec, "X", result.center)
            rec["kind"] = "None"
            rec["status"] = "OK"
        else:
            _nan_vec(rec, "X")
            rec["kind"] = result.kind.value
            rec["status"] = ("SINGULAR_HSECOND"
                             if result.kind.value == "NumericallySingular"
                             else "DEGENERATE")
        rec["mu_re"], rec["mu_du"] = inv.mu.re, inv.mu.du
        rec["factor_re"], rec["factor_du"] = inv.factor.re, inv.factor.du
        rec["detHs_re"], rec["detHs_du"] = result.det_second.re, result.det_second.du
    except HomexpError as exc:
        _nan_vec(rec, "X")
        rec["kind"] = "None"
        for f in ("mu_re", "mu_du", "factor_re", "factor_du", "detHs_re", "detHs_du"):
            rec[f] = float("nan")
        rec["status"] = _status_of(exc)
    return rec


_SWEEPS: dict[str, tuple[Callable, list[str]]] = {
    "evaluate": (_evaluate_node, ["t"] + _vec_cols("Y") + ["status"]),
    "velocities": (_velocities_node,
                   ["t"] + _vec_cols("Va") + _vec_cols("Vf") + _vec_cols("Vr") + ["status"]),
    "poles": (_poles_node,
              ["t"] + _vec_cols("P") + _vec_cols("Q") + ["detHp_re", "detHp_du", "status"]),
    "accel": (_accel_node,
              ["t"] + _vec_cols("Ga") + _vec_cols("Gf") + _vec_cols("Gr") + _vec_cols("Gc")
              + ["status"]),
    "centers": (_centers_node,
                ["t"] + _vec_cols("X")
                + ["mu_re", "mu_du", "factor_re", "factor_du",
                   "detHs_re", "detHs_du", "kind", "status"]),
}


def _fmt_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_records(records: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            writer.writerow([_fmt_cell(rec[c]) for c in columns])
        return buf.getvalue()
    return json.dumps([{c: rec[c] for c in columns} for rec in records],
                      indent=2) + "\n"


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _run_sweep(args: argparse.Namespace) -> int:
    try:
        bundle = load_config(args.config)
        node_fn, columns = _SWEEPS[args.command]
        point = (_pick_point(bundle, args.point)
                 if args.command in ("evaluate", "velocities", "accel") else None)
    except (ParseError, ValidationError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    ts = [float(t) for t in np.linspace(args.t0, args.t1, args.samples)]
    if args.command == "centers":
        def job(t: float) -> dict:
            return node_fn(bundle.motion, point, args.order, t, args.tol)
    else:
        def job(t: float) -> dict:
            return node_fn(bundle.motion, point, args.order, t)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(job, ts))
    else:
        records = [job(t) for t in ts]

    _write_output(render_records(records, columns, args.format), args.out)
    failed = sum(1 for r in records if r["status"] not in ("OK", "DEGENERATE"))
    return 3 if failed == len(records) else 0


def _run_verify(args: argparse.Namespace) -> int:
    motion = None
    if args.config:
        try:
            motion = load_config(args.config).motion
        except (ParseError, ValidationError, OSError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 2
    report = run_verification(seed=args.seed, tol=args.tol, motion=motion)
    _write_output(format_report(report) + "\n", args.out)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homexp",
        description="Dual Lorentzian homothetic exponential motions")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_config: bool = True) -> None:
        p.add_argument("--config", required=needs_config,
                       help="path to a motion config (JSON)")
        p.add_argument("--t0", type=float, default=0.0)
        p.add_argument("--t1", type=float, default=1.0)
        p.add_argument("--samples", type=int, default=256)
        p.add_argument("--order", type=int, default=0,
                       help="derivative order for 'evaluate' (0 = positions)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker threads; output is identical for any value")
        p.add_argument("--point", type=int, default=0,
                       help="index into the config's points list")

    for name, help_text in (
            ("evaluate", "transformed positions (or their --order-th derivative)"),
            ("velocities", "absolute/sliding/relative velocity split"),
            ("poles", "pole points in the moving and fixed frames"),
            ("accel", "absolute/sliding/relative/coriolis acceleration split"),
            ("centers", "acceleration centres or degeneracy diagnosis")):
        add_common(sub.add_parser(name, help=help_text))

    pv = sub.add_parser("verify", help="run the randomized invariant suite")
    pv.add_argument("--config", default=None,
                    help="optional motion config included in the test pool")
    pv.add_argument("--tol", type=float, default=1e-8)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--out", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return _run_verify(args)
    if args.samples < 1:
        print("config error: --samples must be positive", file=sys.stderr)
        return 2
    return _run_sweep(args)


if __name__ == "__main__":
    sys.exit(main())
