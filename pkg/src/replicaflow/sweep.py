"""Grid enumeration, per-point pipeline runs, and deterministic CSV output.

Rows are produced in document order: axes vary in the order they were
declared (earlier axes slower), with the replica count as the innermost axis.
Output bytes are identical for identical specs regardless of worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from .liouvillian import assemble
from .params import ModelParams, SweepSpec
from .spectrum import DEFAULT_TOL, leading_eigenvalue, spectrum
from .weak import steady_state_qubit, weak_flow_renyi, weak_flow_vN_qubit

__all__ = ["SweepRow", "CSV_HEADER", "run_sweep", "emit_csv", "emit_spectra_csv", "WARN_TOKENS"]

CSV_HEADER = "M,gamma_b,Omega,theta_e,theta_b,delta,lambda0_re,lambda0_im,F_M,F_weak_M,F_vN_weak,warn_flags"

# Registry of warn_flags tokens (joined with ';' in the CSV field):
#   complex_leading  leading eigenvalue kept a residual imaginary part
#   row_error        pipeline failure; numeric fields are nan
#   weak_error       weak-reference failure; weak columns are nan
WARN_TOKENS = ("complex_leading", "row_error", "weak_error")


@dataclass(frozen=True, eq=False)
class SweepRow:
    M: int
    gamma_b: float
    Omega: float
    theta_e: float
    theta_b: float
    delta: float
    lambda0_re: float
    lambda0_im: float
    F_M: float
    F_weak_M: float
    F_vN_weak: float
    warn_flags: str
    eigenvalues: np.ndarray | None = None


def grid_points(spec: SweepSpec) -> list[tuple[ModelParams, int]]:
    """The (params, M) pairs of the grid, in document order."""
    names = [name for name, _ in spec.axes]
    value_lists = [values for _, values in spec.axes]
    points = []
    for combo in product(*value_lists, spec.replica_list):
        overrides = dict(zip(names, combo[:-1]))
        m = combo[-1]
        base = dict(Omega=0.0, theta_e=1.0, gamma_b=0.0)
        base.update(overrides)
        points.append((ModelParams(**base), int(m)))
    return points


def _weak_columns(params: ModelParams, M: int) -> tuple[float, float, str]:
    try:
        state = steady_state_qubit(params, include_probe=True)
        f_vn = weak_flow_vN_qubit(params, state)
        # F_1 vanishes identically for trace-preserving dynamics.
        f_m = weak_flow_renyi(params, M, state) if M >= 2 else 0.0
        return f_m, f_vn, ""
    except Exception:
        return float("nan"), float("nan"), "weak_error"


def compute_row(params: ModelParams, M: int, include_weak: bool = True, keep_spectrum: bool = False) -> SweepRow:
    tokens = []
    try:
        parts = assemble(M, params)
        s = spectrum(parts.total)
        lam0, warned = leading_eigenvalue(s, DEFAULT_TOL)
        lam0_im = s.leading_imag_residual
        if warned:
            tokens.append("complex_leading")
        f_m = -lam0
        eigs = s.eigenvalues if keep_spectrum else None
    except Exception:
        lam0, lam0_im, f_m, eigs = float("nan"), float("nan"), float("nan"), None
        tokens.append("row_error")
    if include_weak:
        f_weak, f_vn, weak_token = _weak_columns(params, M)
        if weak_token:
            tokens.append(weak_token)
    else:
        f_weak, f_vn = float("nan"), float("nan")
    return SweepRow(
        M=M,
        gamma_b=params.gamma_b,
        Omega=params.Omega,
        theta_e=params.theta_e,
        theta_b=params.theta_b,
        delta=params.delta,
        lambda0_re=lam0,
        lambda0_im=lam0_im,
        F_M=f_m,
        F_weak_M=f_weak,
        F_vN_weak=f_vn,
        warn_flags=";".join(tokens),
        eigenvalues=eigs,
    )


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Run the pipeline on every grid point; failures stay per-row."""
    points = grid_points(spec)
    if workers <= 1:
        return [compute_row(p, m, spec.include_weak, spec.dump_spectra) for p, m in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(compute_row, p, m, spec.include_weak, spec.dump_spectra) for p, m in points]
        return [f.result() for f in futures]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def emit_csv(rows: list[SweepRow], destination: str) -> None:
    """Write rows with stable 17-significant-digit formatting and \\n endings."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    str(r.M),
                    _fmt(r.gamma_b),
                    _fmt(r.Omega),
                    _fmt(r.theta_e),
                    _fmt(r.theta_b),
                    _fmt(r.delta),
                    _fmt(r.lambda0_re),
                    _fmt(r.lambda0_im),
                    _fmt(r.F_M),
                    _fmt(r.F_weak_M),
                    _fmt(r.F_vN_weak),
                    r.warn_flags,
                ]
            )
        )
    payload = "\n".join(lines) + "\n"
    try:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {destination!r}: {exc}") from exc


def emit_spectra_csv(rows: list[SweepRow], destination: str) -> None:
    """Companion dump of all eigenvalues: row index, re, im."""
    lines = ["row,re,im"]
    for idx, r in enumerate(rows):
        if r.eigenvalues is None:
            continue
        for ev in r.eigenvalues:
            lines.append(f"{idx},{ev.real:.17g},{ev.imag:.17g}")
    payload = "\n".join(lines) + "\n"
    try:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    except OSError as exc:
        raise OSError(f"cannot write spectra CSV to {destination!r}: {exc}") from exc


def failed_rows(rows: list[SweepRow]) -> list[int]:
    return [i for i, r in enumerate(rows) if "row_error" in r.warn_flags or "weak_error" in r.warn_flags]
