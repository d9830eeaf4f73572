"""Command line: ``cosmoqc {sweep,scale-factor,export-qasm,error-estimate}``.

Settings come from built-in defaults, then an optional ``--config`` file of
``key = value`` lines (keys spelled like the long flags, without dashes),
then explicit flags.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cosmology import CosmologyParams
from .mitigation import EXTRAPOLATORS, error_budget
from .paulicompile import build_evolution_circuit, export_qasm, gate_counts
from .sweep import SweepConfig, rows_to_csv, run_sweep, scale_factor_csv

TRANSPILED_GATE_COUNTS = (226, 96)  # one-qubit, two-qubit, after hardware transpilation
REPORTED_ERROR = 0.52

_DEFAULTS = {
    "A": 1.5,
    "B": 0.5,
    "mass": 1.0,
    "momentum": 1.0,
    "time": 1.0,
    "rho": 1.0,
    "x_min": -2.0,
    "x_max": 2.0,
    "points": 41,
    "eps1": 4.238e-4,
    "eps2": 6.741e-3,
    "zne_scales": "1,3,5",
    "zne_method": "richardson-quadratic",
    "shots": None,
    "seed": 0,
    "rhos": "0.5,1,2",
    "eta_min": -10.0,
    "eta_max": 10.0,
    "eta_points": 201,
    "n1": None,
    "n2": None,
    "optimize": False,
}


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in str(text).split(",") if v.strip())


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in str(text).split(",") if v.strip())


def read_config(path: str | Path) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def _settings(args: argparse.Namespace) -> dict:
    merged = dict(_DEFAULTS)
    if args.config:
        merged.update(read_config(args.config))
    for key in _DEFAULTS:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            merged[key] = val
    conv = {
        "A": float, "B": float, "mass": float, "momentum": float, "time": float,
        "rho": float, "x_min": float, "x_max": float, "points": int,
        "eps1": float, "eps2": float, "seed": int, "eta_min": float,
        "eta_max": float, "eta_points": int,
    }
    try:
        for key, fn in conv.items():
            merged[key] = fn(merged[key])
        for key in ("shots", "n1", "n2"):
            if merged[key] is not None:
                merged[key] = int(merged[key])
        merged["zne_scales"] = _int_list(merged["zne_scales"])
        merged["rhos"] = _float_list(merged["rhos"])
        if isinstance(merged["optimize"], str):
            merged["optimize"] = merged["optimize"].lower() in ("1", "true", "yes")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return merged


def _sweep_config(s: dict) -> SweepConfig:
    return SweepConfig(
        A=s["A"], B=s["B"], mass=s["mass"], momentum=s["momentum"], time=s["time"],
        x_min=s["x_min"], x_max=s["x_max"], points=s["points"],
        eps1=s["eps1"], eps2=s["eps2"], zne_scales=s["zne_scales"],
        zne_method=s["zne_method"], shots=s["shots"], seed=s["seed"],
    )


def _params(s: dict) -> CosmologyParams:
    return CosmologyParams(
        A=s["A"], B=s["B"], rho=s["rho"], m=s["mass"], k=s["momentum"], t=s["time"]
    )


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        # newline="" keeps "\n" on every platform
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_sweep(s: dict, out: str | None) -> None:
    cfg = _sweep_config(s)
    _emit(rows_to_csv(run_sweep(cfg)), out)


def cmd_scale_factor(s: dict, out: str | None) -> None:
    CosmologyParams(A=s["A"], B=s["B"])
    if not s["rhos"] or min(s["rhos"]) <= 0:
        raise ValueError("rhos must be positive")
    text = scale_factor_csv(
        s["A"], s["B"], s["rhos"], s["eta_min"], s["eta_max"], s["eta_points"]
    )
    _emit(text, out)


def cmd_export_qasm(s: dict, out: str | None) -> None:
    circ = build_evolution_circuit(_params(s), optimize=s["optimize"])
    n1, n2 = gate_counts(circ)
    _emit(export_qasm(circ), out)
    summary = f"one-qubit gates: {n1}\ntwo-qubit gates: {n2}\n"
    # keep stdout clean for the QASM text when no file is given
    (sys.stdout if out is not None else sys.stderr).write(summary)


def cmd_error_estimate(s: dict, out: str | None) -> None:
    circ = build_evolution_circuit(_params(s))
    n1, n2 = gate_counts(circ)
    if s["n1"] is not None:
        n1 = s["n1"]
    if s["n2"] is not None:
        n2 = s["n2"]
    lines = []
    surv, err = error_budget(n1, n2, s["eps1"], s["eps2"])
    lines.append(f"this circuit: n1={n1} n2={n2} eps1={s['eps1']:g} eps2={s['eps2']:g}")
    lines.append(f"  survival exp(-(n2*eps2 + n1*eps1)) = {surv:.6f}")
    lines.append(f"  implied error = {err:.6f}")
    p1, p2 = TRANSPILED_GATE_COUNTS
    psurv, perr = error_budget(p1, p2, s["eps1"], s["eps2"])
    lines.append(f"transpiled reference counts: n1={p1} n2={p2}")
    lines.append(f"  survival = {psurv:.6f}")
    lines.append(f"  implied error = {perr:.6f} (reported: about {REPORTED_ERROR:.0%})")
    _emit("\n".join(lines) + "\n", out)


COMMANDS = {
    "sweep": cmd_sweep,
    "scale-factor": cmd_scale_factor,
    "export-qasm": cmd_export_qasm,
    "error-estimate": cmd_error_estimate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("physics")
    g.add_argument("--A", type=float)
    g.add_argument("--B", type=float)
    g.add_argument("--mass", type=float)
    g.add_argument("--momentum", type=float)
    g.add_argument("--time", type=float)
    g.add_argument("--rho", type=float, help="expansion rate (export-qasm, error-estimate)")
    g = common.add_argument_group("sweep")
    g.add_argument("--x-min", dest="x_min", type=float)
    g.add_argument("--x-max", dest="x_max", type=float)
    g.add_argument("--points", type=int)
    g.add_argument("--eps1", type=float)
    g.add_argument("--eps2", type=float)
    g.add_argument("--zne-scales", dest="zne_scales", help="comma-separated odd factors")
    g.add_argument("--zne-method", dest="zne_method", choices=EXTRAPOLATORS)
    g.add_argument("--shots", type=int)
    g.add_argument("--seed", type=int)
    g = common.add_argument_group("scale-factor")
    g.add_argument("--rhos", help="comma-separated expansion rates")
    g.add_argument("--eta-min", dest="eta_min", type=float)
    g.add_argument("--eta-max", dest="eta_max", type=float)
    g.add_argument("--eta-points", dest="eta_points", type=int)
    g = common.add_argument_group("gates")
    g.add_argument("--n1", type=int, help="override one-qubit gate count")
    g.add_argument("--n2", type=int, help="override two-qubit gate count")
    g.add_argument("--optimize", action="store_true", help="peephole-cancel adjacent inverses")
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--config", help="key = value settings file")

    parser = argparse.ArgumentParser(prog="cosmoqc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _settings(args)
        COMMANDS[args.command](settings, args.out)
    except (UsageError, ValueError) as exc:
        parser.exit(2, f"cosmoqc {args.command}: error: {exc}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
