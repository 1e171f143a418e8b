"""Liouvillian spectra, leading-eigenvalue selection, and entropy flows.

The flow of order M is F_M = -lambda_0, where lambda_0 is the eigenvalue of
the assembled generator with the largest (least negative) real part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .liouvillian import assemble
from .params import ModelParams

__all__ = ["SpectrumResult", "spectrum", "leading_eigenvalue", "renyi_flow", "DEFAULT_TOL"]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class SpectrumResult:
    """Full spectrum plus diagnostics.

    eigenvalues are sorted by descending real part (ties by ascending
    imaginary part), so eigenvalues[0] is the leading one.
    """

    eigenvalues: np.ndarray
    leading: float
    leading_imag_residual: float
    max_positive_real_part: float
    pairing_defect: float

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


def _pairing_defect(ev: np.ndarray) -> float:
    """Max distance from the spectrum to its own complex conjugate."""
    diff = np.abs(ev[:, None] - np.conj(ev)[None, :])
    return float(diff.min(axis=1).max())


def spectrum(L: np.ndarray, tol: float = DEFAULT_TOL) -> SpectrumResult:
    """Eigenvalues of a dense non-Hermitian generator, with diagnostics."""
    L = np.asarray(L)
    if not np.all(np.isfinite(L.real)) or not np.all(np.isfinite(L.imag)):
        raise ValueError("generator contains non-finite entries")
    try:
        ev = sla.eigvals(L)
    except sla.LinAlgError as exc:
        raise RuntimeError(f"eigensolver failed on a {L.shape[0]}x{L.shape[1]} matrix: {exc}") from exc
    order = np.lexsort((ev.imag, -ev.real))
    ev = ev[order]
    lead, _ = _select_leading(ev, tol)
    return SpectrumResult(
        eigenvalues=ev,
        leading=float(lead.real),
        leading_imag_residual=float(abs(lead.imag)),
        max_positive_real_part=float(ev.real.max()),
        pairing_defect=_pairing_defect(ev),
    )


def _select_leading(ev: np.ndarray, tol: float) -> tuple[complex, bool]:
    if len(ev) == 0:
        raise ValueError("empty spectrum")
    re_max = ev.real.max()
    near = ev[ev.real >= re_max - tol]
    lead = near[np.argmin(np.abs(near.imag))]
    return lead, bool(abs(lead.imag) > tol)


def leading_eigenvalue(s: SpectrumResult, tol: float = DEFAULT_TOL) -> tuple[float, bool]:
    """Select the max-real-part eigenvalue; ties within tol broken by min |Im|.

    Returns (real part, warning). The warning flags a residual imaginary part
    above tol; a complex leading pair is reported, not treated as an error.
    """
    lead, warn = _select_leading(s.eigenvalues, tol)
    return float(lead.real), warn


def renyi_flow(params: ModelParams, M: int, tol: float = DEFAULT_TOL) -> float:
    """Entropy flow of order M: minus the leading eigenvalue of the generator.

    M = 1 is allowed and returns 0 up to numerical tolerance (the one-replica
    generator is trace preserving), which serves as a consistency check.
    """
    parts = assemble(M, params)
    s = spectrum(parts.total, tol)
    lam0, _ = leading_eigenvalue(s, tol)
    return -lam0
