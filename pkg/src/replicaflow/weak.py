"""Weak-coupling closed-form flows and the one-replica steady state.

These provide the independent reference the replica results are compared
against: for gamma_b << gamma_e the two routes must agree, and they separate
as the drive grows at strong probe coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .liouvillian import assemble
from .params import ModelParams
from .rates import bose, prefactor_G, rates_probe

__all__ = [
    "QubitState",
    "steady_state_qubit",
    "weak_flow_renyi",
    "weak_flow_vN_qubit",
    "weak_flow_vN_oscillator",
]


@dataclass(frozen=True)
class QubitState:
    """Populations and coherence of the qubit in the energy basis."""

    p0: float
    p1: float
    rho01: complex

    def __post_init__(self):
        if abs(self.p0 + self.p1 - 1.0) > 1e-12:
            raise ValueError(f"populations must sum to 1, got {self.p0 + self.p1}")
        if self.p0 < -1e-12 or self.p1 < -1e-12:
            raise ValueError("populations must be non-negative")
        if abs(self.rho01) ** 2 > self.p0 * self.p1 + 1e-9:
            raise ValueError("coherence violates positivity: |rho01|^2 > p0*p1")


def steady_state_qubit(params: ModelParams, include_probe: bool = True) -> QubitState:
    """Null vector of the one-replica generator, normalized to unit trace.

    include_probe=False drops the probe dissipator (sets gamma_b to zero for
    the solve), giving the environment-only stationary state.
    """
    p = params if include_probe else params.with_overrides(gamma_b=0.0)
    L = assemble(1, p).total
    kernel = sla.null_space(L)
    if kernel.shape[1] != 1:
        raise RuntimeError(
            f"steady state is not unique: kernel dimension {kernel.shape[1]}"
        )
    rho = kernel[:, 0].reshape(2, 2)
    rho = rho / np.trace(rho)
    rho = 0.5 * (rho + rho.conj().T)
    return QubitState(p0=float(rho[0, 0].real), p1=float(rho[1, 1].real), rho01=complex(rho[0, 1]))


def _probe_exchange(state: QubitState, params: ModelParams) -> float:
    """Gamma_down p1 - Gamma_up p0 - (Gamma_down - Gamma_up) |rho01|^2 at M=1 rates."""
    r = rates_probe(1, params.theta_b, params.gamma_b)
    coh = abs(state.rho01) ** 2
    return r.down * state.p1 - r.up * state.p0 - (r.down - r.up) * coh


def weak_flow_renyi(
    params: ModelParams,
    M: int,
    state: QubitState,
    literal_omega: bool = False,
    omega: float = 1.0,
) -> float:
    """Order-M weak-coupling flow G_M * (probe exchange balance).

    The published expression carries a bare frequency prefactor that is
    dimensionally inconsistent with a rate; by default flows are reported in
    rate units. Set literal_omega=True (with omega in rate units) to
    reproduce the literal expression.
    """
    if M < 2:
        raise ValueError(f"weak replica flow needs M >= 2, got {M}")
    flow = prefactor_G(M, params.theta_b) * _probe_exchange(state, params)
    if literal_omega:
        flow *= omega
    return flow


def weak_flow_vN_qubit(params: ModelParams, state: QubitState) -> float:
    """Weak-coupling von Neumann flow: (probe exchange balance) * theta_b."""
    return _probe_exchange(state, params) * params.theta_b


def weak_flow_vN_oscillator(theta_h: float, theta_b: float, chi_b: float) -> float:
    """Closed-form oscillator flow (nbar(theta_h) - nbar(theta_b)) * chi_b * theta_b.

    theta_h is the oscillator's effective temperature ratio; the flow reverses
    sign when the probe is hotter than the oscillator.
    """
    if not math.isfinite(theta_h) or theta_h <= 0:
        raise ValueError(f"theta_h must be > 0, got {theta_h!r}")
    if not math.isfinite(theta_b) or theta_b <= 0:
        raise ValueError(f"theta_b must be > 0, got {theta_b!r}")
    return (bose(theta_h) - bose(theta_b)) * chi_b * theta_b
