"""Command-line entry point.

Subcommands map onto the analysis pipeline: `build` inspects generator
matrices, `flow` and `spectrum` evaluate one parameter point, `reference`
prints the weak-coupling closed forms, `sweep` runs grids to CSV, and `fit`
extrapolates the von Neumann flow from sweep output.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fitting, sweep
from .liouvillian import assemble
from .params import PARAM_KEYS, ModelParams, parse_sweep
from .spectrum import DEFAULT_TOL, leading_eigenvalue, spectrum
from .weak import steady_state_qubit, weak_flow_renyi, weak_flow_vN_oscillator, weak_flow_vN_qubit

__all__ = ["dispatch", "main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _add_param_args(p: argparse.ArgumentParser, with_m: bool = True) -> None:
    for key in PARAM_KEYS:
        p.add_argument(f"--{key}", type=float, default=None)
    if with_m:
        p.add_argument("--M", type=int, default=2, help="replica count")


def _params_from(args) -> ModelParams:
    overrides = {k: getattr(args, k) for k in PARAM_KEYS if getattr(args, k) is not None}
    base = dict(Omega=0.0, theta_e=1.0, gamma_b=0.0)
    base.update(overrides)
    return ModelParams(**base)


def _build_parser() -> _Parser:
    parser = _Parser(prog="replicaflow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="dump a generator matrix")
    _add_param_args(p)
    p.add_argument("--part", choices=["unitary", "environment", "probe_same", "probe_cross", "total"],
                   default="total")
    p.add_argument("--format", choices=["coo", "dense"], default="coo",
                   help="coo: row,col,re,im CSV; dense: whitespace matrix text")
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("flow", help="leading eigenvalue and flow at one point")
    _add_param_args(p)
    p.add_argument("--dump-spectrum", default=None, metavar="PATH", help="also write re,im CSV")

    p = sub.add_parser("spectrum", help="write all eigenvalues as re,im CSV")
    _add_param_args(p)
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("reference", help="weak-coupling steady state and flows")
    _add_param_args(p)
    p.add_argument("--exclude-probe", action="store_true",
                   help="steady state without the probe dissipator")
    p.add_argument("--literal-omega", action="store_true",
                   help="keep the literal frequency prefactor on the replica flow")
    p.add_argument("--omega", type=float, default=1.0,
                   help="frequency in rate units for --literal-omega")
    p.add_argument("--theta_h", type=float, default=None,
                   help="also print the oscillator flow at this effective temperature ratio")

    p = sub.add_parser("sweep", help="run a parameter grid to CSV")
    p.add_argument("--config", required=True, help="sweep config file")
    p.add_argument("--out", default=None, help="override the config output path")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("fit", help="fit flow vs replica count from a sweep CSV")
    p.add_argument("--in", dest="input", required=True, help="sweep CSV path")
    p.add_argument("--select", default="", help="comma list key=value filtering rows")
    p.add_argument("--append", default=None, metavar="PATH", help="append results to a fit CSV")
    return parser


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_build(args) -> int:
    parts = assemble(args.M, _params_from(args))
    matrix = getattr(parts, args.part)
    if args.format == "dense":
        text = "\n".join(" ".join(f"{v.real:+.17g}{v.imag:+.17g}j" for v in row) for row in matrix) + "\n"
    else:
        lines = ["row,col,re,im"]
        rows, cols = np.nonzero(matrix)
        for r, c in zip(rows, cols):
            v = matrix[r, c]
            lines.append(f"{r},{c},{v.real:.17g},{v.imag:.17g}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _spectrum_csv(ev: np.ndarray) -> str:
    lines = ["re,im"] + [f"{v.real:.17g},{v.imag:.17g}" for v in ev]
    return "\n".join(lines) + "\n"


def _cmd_flow(args) -> int:
    params = _params_from(args)
    parts = assemble(args.M, params)
    s = spectrum(parts.total)
    lam0, warned = leading_eigenvalue(s, DEFAULT_TOL)
    print(f"M = {args.M}")
    print(f"lambda0_re = {lam0:.17g}")
    print(f"lambda0_im = {s.leading_imag_residual:.17g}")
    print(f"F_M = {-lam0:.17g}")
    print(f"max_real_part = {s.max_positive_real_part:.17g}")
    print(f"pairing_defect = {s.pairing_defect:.17g}")
    print(f"complex_leading_warning = {'true' if warned else 'false'}")
    if args.dump_spectrum:
        _emit(_spectrum_csv(s.eigenvalues), args.dump_spectrum)
    return 0


def _cmd_spectrum(args) -> int:
    parts = assemble(args.M, _params_from(args))
    s = spectrum(parts.total)
    _emit(_spectrum_csv(s.eigenvalues), args.out)
    return 0


def _cmd_reference(args) -> int:
    params = _params_from(args)
    state = steady_state_qubit(params, include_probe=not args.exclude_probe)
    print(f"p0 = {state.p0:.17g}")
    print(f"p1 = {state.p1:.17g}")
    print(f"rho01_abs = {abs(state.rho01):.17g}")
    if args.M >= 2:
        f_m = weak_flow_renyi(params, args.M, state, literal_omega=args.literal_omega, omega=args.omega)
        print(f"F_weak_{args.M} = {f_m:.17g}")
    print(f"F_vN_weak = {weak_flow_vN_qubit(params, state):.17g}")
    if args.theta_h is not None:
        osc = weak_flow_vN_oscillator(args.theta_h, params.theta_b, params.gamma_b)
        print(f"F_vN_oscillator = {osc:.17g}")
    return 0


def _cmd_sweep(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        spec = parse_sweep(fh.read())
    out = args.out if args.out is not None else spec.out_path
    if out is None:
        raise ValueError("no output path: set `out =` in the config or pass --out")
    rows = sweep.run_sweep(spec, workers=args.workers)
    sweep.emit_csv(rows, out)
    if spec.dump_spectra:
        stem, dot, ext = out.rpartition(".")
        spectra_path = (stem + "_spectra." + ext) if dot else (out + "_spectra")
        sweep.emit_spectra_csv(rows, spectra_path)
    failed = sweep.failed_rows(rows)
    if failed:
        print(f"{len(failed)} of {len(rows)} rows failed: indices {failed}", file=sys.stderr)
        return 2
    return 0


def _parse_select(text: str) -> dict[str, float]:
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ValueError(f"malformed selector {item!r}, expected key=value")
        key, value = (s.strip() for s in item.split("=", 1))
        if key not in ("M", "gamma_b", "Omega", "theta_e", "theta_b", "delta"):
            raise ValueError(f"unknown selector key {key!r}")
        out[key] = float(value)
    return out


def _cmd_fit(args) -> int:
    select = _parse_select(args.select)
    header = sweep.CSV_HEADER.split(",")
    points = []
    with open(args.input, "r", encoding="utf-8") as fh:
        first = fh.readline().strip()
        if first.split(",") != header:
            raise ValueError(f"unexpected CSV header in {args.input!r}")
        for line in fh:
            fields = line.strip().split(",")
            if len(fields) != len(header):
                continue
            row = dict(zip(header, fields))
            if any(abs(float(row[k]) - v) > 1e-9 * max(1.0, abs(v)) for k, v in select.items()):
                continue
            points.append((int(row["M"]), float(row["F_M"])))
    points = [(m, f) for m, f in points if m >= 2]
    points.sort()
    if len(points) < 3:
        raise ValueError(f"selection matched {len(points)} usable rows; need >= 3 with M >= 2")
    result = fitting.fit_flow_vs_M(points)
    print(f"a = {result.a:.17g}")
    print(f"b = {result.b:.17g}")
    print(f"c = {result.c:.17g}")
    print(f"rms_residual = {result.rms_residual:.17g}")
    print(f"s_vN = {result.s_vN:.17g}")
    if result.note:
        print(f"note = {result.note}")
    if args.append:
        import csv as _csv
        import os
        new = not os.path.exists(args.append)
        with open(args.append, "a", encoding="utf-8", newline="") as fh:
            writer = _csv.writer(fh, lineterminator="\n")
            if new:
                writer.writerow(["select", "a", "b", "c", "rms_residual", "s_vN"])
            writer.writerow([args.select, f"{result.a:.17g}", f"{result.b:.17g}",
                             f"{result.c:.17g}", f"{result.rms_residual:.17g}", f"{result.s_vN:.17g}"])
    return 0


_COMMANDS = {
    "build": _cmd_build,
    "flow": _cmd_flow,
    "spectrum": _cmd_spectrum,
    "reference": _cmd_reference,
    "sweep": _cmd_sweep,
    "fit": _cmd_fit,
}


def dispatch(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
