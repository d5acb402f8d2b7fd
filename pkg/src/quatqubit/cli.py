"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 bad configuration or
arguments, 3 state inconsistent with first-order dynamics.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from typing import Optional

import numpy as np

from . import config as cfgmod
from . import oracle, verify
from .dynamics import InconsistentStateError, Trajectory, check_consistency, integrate, reverse_trajectory
from .gates import GateSpec, compose, decompose
from .leftmult import axis_circle, cone_check
from .quat_core import exp_pure, mul
from .spinor_bridge import BlochVector, Spinor, bloch_of_state, f_inverse, map_mi, map_mi_inverse

COLUMNS = (
    "t", "q_w", "q_x", "q_y", "q_z", "bloch_x", "bloch_y", "bloch_z",
    "norm", "L2", "vhat_x", "vhat_y", "vhat_z",
)
GATE_TOL = 1e-12

_S2 = 1.0 / math.sqrt(2.0)
NAMED_STATES = {
    "0": (1.0, 0.0),
    "1": (0.0, 1.0),
    "+": (_S2, _S2),
    "-": (_S2, -_S2),
    "+i": (_S2, 1j * _S2),
    "-i": (_S2, -1j * _S2),
}


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- output

def trajectory_rows(tr: Trajectory) -> np.ndarray:
    return np.column_stack([
        tr.t, tr.q, tr.bloch, tr.norm, tr.l2, tr.vhat[:, 1:4],
    ])


def format_csv(tr: Trajectory) -> str:
    lines = [",".join(COLUMNS)]
    for row in trajectory_rows(tr):
        lines.append(",".join(format(float(v), ".17g") for v in row))
    return "\n".join(lines) + "\n"


def format_json(tr: Trajectory) -> str:
    rows = [[None if math.isnan(v) else float(v) for v in row] for row in trajectory_rows(tr)]
    doc = {"columns": list(COLUMNS), "method": tr.method, "omega0": tr.omega0, "rows": rows}
    return json.dumps(doc, indent=1) + "\n"


def write_trajectory(tr: Trajectory, out: Optional[str], fmt: str) -> None:
    text = format_csv(tr) if fmt == "csv" else format_json(tr)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _print_json(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


# ---------------------------------------------------------------- parsing

_GATE_RE = re.compile(r"^(X|Y|Z|H)([+-]?)$|^(?:P|PHASE)\(([^()]*)\)$|^R\(([^()]*)\)$", re.IGNORECASE)


def parse_gate(token: str) -> GateSpec:
    """``X``, ``X-``, ``Y+``, ``H``, ``P(theta)``, ``R(nx,ny,nz,angle)``."""
    m = _GATE_RE.match(token.strip())
    if not m:
        raise UsageError(f"unknown gate {token!r}")
    name, sign, theta, general = m.groups()
    try:
        if name:
            return GateSpec.named(name, -1 if sign == "-" else 1)
        if theta is not None:
            return GateSpec.phase(float(theta))
        parts = [float(p) for p in general.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad gate {token!r}: {exc}") from exc
    if len(parts) != 4:
        raise UsageError(f"R gate needs nx,ny,nz,angle: {token!r}")
    n = math.sqrt(sum(c * c for c in parts[:3]))
    if n == 0.0:
        raise UsageError("R gate axis must be nonzero")
    return GateSpec.general([c / n for c in parts[:3]], parts[3])


def parse_gates(tokens) -> list[GateSpec]:
    words = []
    for tok in tokens:
        words += re.findall(r"[^\s()]+(?:\([^()]*\))?", tok)
    if not words:
        raise UsageError("gate sequence is empty")
    return [parse_gate(w) for w in words]


def parse_state(text: str) -> Spinor:
    """Named basis state (0, 1, +, -, +i, -i) or ``theta,phi`` Bloch angles."""
    if text in NAMED_STATES:
        return Spinor(*NAMED_STATES[text])
    try:
        theta, phi = (float(p) for p in text.split(","))
    except ValueError as exc:
        raise UsageError(f"unknown state {text!r}") from exc
    return Spinor(math.cos(theta / 2.0), complex(math.cos(phi), math.sin(phi)) * math.sin(theta / 2.0))


def _vector(text: str) -> BlochVector:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad vector {text!r}") from exc
    n = math.sqrt(sum(c * c for c in parts)) if len(parts) == 3 else 0.0
    if n == 0.0:
        raise UsageError(f"need a nonzero 3-vector, got {text!r}")
    return BlochVector(*(c / n for c in parts))


# ---------------------------------------------------------------- commands

def _load_config(args) -> cfgmod.RunConfig:
    if not args.config:
        raise cfgmod.ConfigError("--config is required")
    cfg = cfgmod.load(args.config)
    return cfg.replace(method=args.method, step=args.step, t_end=args.t_end, out=args.out, format=args.format, seed=args.seed)


def _simulate(cfg: cfgmod.RunConfig) -> Trajectory:
    tr = integrate(cfg.initial_state(), cfg.profile, cfg.t_end, cfg.step, method=cfg.method)
    check_consistency(tr)
    return tr


def cmd_simulate(args) -> int:
    cfg = _load_config(args)
    tr = _simulate(cfg)
    write_trajectory(tr, cfg.out, cfg.format)
    return 0


def cmd_reverse(args) -> int:
    cfg = _load_config(args)
    tr = _simulate(cfg)
    back, residual = reverse_trajectory(tr, cfg.profile)
    write_trajectory(back, cfg.out, cfg.format)
    if cfg.out not in (None, "-"):
        _print_json({"max_residual": residual, "samples": len(back)})
    else:
        print(f"# max_residual {residual!r}", file=sys.stderr)
    return 0


def _oracle_matrix(g: GateSpec) -> np.ndarray:
    if g.name == "GENERAL":
        return oracle.rn_matrix(g.axis.as_array(), g.angle)
    return oracle.table_matrix(g.name, g.sign, g.theta)


def cmd_gate(args) -> int:
    gates = parse_gates(args.gates)
    s0 = parse_state(args.init)
    q0 = map_mi(s0)
    total = compose(gates)
    q1 = mul(q0, total)
    U = np.eye(2, dtype=complex)
    for g in gates:
        U = _oracle_matrix(g) @ U
    want = U @ s0.as_array()
    got = map_mi_inverse(q1).as_array()
    spinor_dev = float(np.max(np.abs(got - want)))
    bloch_final = bloch_of_state(q1).as_array()
    bloch_dev = float(np.max(np.abs(bloch_final - oracle.bloch(want))))
    dec = decompose(total)
    report = {
        "gates": [g.label() for g in gates],
        "composed_quaternion": list(total.as_tuple()),
        "axis": list(dec.axis.as_tuple()),
        "angle": dec.angle,
        "initial_bloch": list(bloch_of_state(q0).as_tuple()),
        "final_bloch": bloch_final.tolist(),
        "oracle_spinor": [[z.real, z.imag] for z in want],
        "oracle_bloch": oracle.bloch(want).tolist(),
        "max_deviation": max(spinor_dev, bloch_dev),
    }
    report["passed"] = report["max_deviation"] <= GATE_TOL
    _print_json(report)
    return 0 if report["passed"] else 1


def cmd_cone(args) -> int:
    if args.trials < 1 or args.samples < 1:
        raise UsageError("trials and samples must be positive")
    if args.axis is None:
        return _report(verify.suite_cone(seed=args.seed, trials=args.trials), "cone", args)
    n_axis = _vector(args.axis)
    q = map_mi(parse_state(args.init))
    q_l = exp_pure(f_inverse(n_axis), -args.angle / 2.0)
    axes = axis_circle(q, q_l, samples=args.samples)
    lhs, rhs = cone_check(n_axis, q, q_l)
    qhat = bloch_of_state(q).as_array()
    spread = [float(np.dot(r.as_array(), qhat)) for r in axes]
    report = {
        "n_dot_z": lhs,
        "qhat_dot_r": rhs,
        "half_angle": math.acos(max(-1.0, min(1.0, lhs))),
        "max_deviation_over_phase": max(abs(s - lhs) for s in spread),
        "axes": [list(r.as_tuple()) for r in axes],
    }
    report["passed"] = abs(lhs - rhs) <= 1e-12 and report["max_deviation_over_phase"] <= 1e-12
    _print_json(report)
    return 0 if report["passed"] else 1


def _report(checks, suite: str, args) -> int:
    doc = {
        "suite": suite,
        "seed": args.seed,
        "trials": args.trials,
        "checks": [c.as_dict() for c in checks],
        "passed": all(c.passed for c in checks),
    }
    _print_json(doc)
    return 0 if doc["passed"] else 1


def cmd_verify(args) -> int:
    return _report(verify.run(args.suite, seed=args.seed, trials=args.trials), args.suite, args)


# ---------------------------------------------------------------- entry

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quatqubit", description="Quaternion spin-1/2 toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def run_opts(sp):
        sp.add_argument("--config", metavar="PATH", help="YAML or JSON run configuration")
        sp.add_argument("--out", metavar="PATH", help="output file ('-' for stdout)")
        sp.add_argument("--format", choices=cfgmod.FORMATS)
        sp.add_argument("--method", choices=("rk4-first", "rk4-second", "exact"))
        sp.add_argument("--step", type=float, metavar="H")
        sp.add_argument("--t-end", type=float, metavar="T")
        sp.add_argument("--seed", type=int)

    sp = sub.add_parser("simulate", help="integrate a configured run and export the trajectory")
    run_opts(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("reverse", help="integrate, then export the time-reversed trajectory")
    run_opts(sp)
    sp.set_defaults(func=cmd_reverse)

    sp = sub.add_parser("gate", help="apply a gate sequence and compare with matrix mechanics")
    sp.add_argument("gates", nargs="*", help="e.g. X H- P(0.5) R(0,0,1,1.57)")
    sp.add_argument("--init", default="0", help="0, 1, +, -, +i, -i or theta,phi (default 0)")
    sp.set_defaults(func=cmd_gate)

    sp = sub.add_parser("cone", help="check the rotation-axis cone of left-multiplications")
    sp.add_argument("--axis", help="left-multiplication axis x,y,z (omit for a random sweep)")
    sp.add_argument("--angle", type=float, default=math.pi / 2)
    sp.add_argument("--init", default="+")
    sp.add_argument("--samples", type=int, default=16)
    sp.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    sp.add_argument("--trials", type=int, default=verify.DEFAULT_TRIALS)
    sp.set_defaults(func=cmd_cone)

    sp = sub.add_parser("verify", help="run randomized verification suites")
    sp.add_argument("suite", nargs="?", default="all", choices=verify.SUITES + ("all",))
    sp.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    sp.add_argument("--trials", type=int, default=verify.DEFAULT_TRIALS)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (cfgmod.ConfigError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InconsistentStateError as exc:
        print(f"inconsistent state: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
