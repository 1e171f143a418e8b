"""Assembly of the M-replica generator for the driven two-reservoir qubit.

The generator splits into four parts:

* unitary        -i [H, .] with H = sum_k (-delta/2 Z_k + Omega/2 X_k)
* environment    standard dissipator per replica, single-quantum rates
* probe_same     per-replica probe dissipator with M-replica rates and
                 single-quantum exponential weights on the jump terms
* probe_cross    excitation exchange between replicas i and i+N, with
                 thermal weights growing with the number N of silent
                 replicas crossed

Rate x exponential products are always combined inside correlator_S; see the
rates module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operators import (
    PAULI_X,
    PAULI_Z,
    SIGMA,
    anticommutator_super,
    commutator_super,
    lowering_on_replica,
    operator_on_replica,
    sandwich_super,
)
from .params import ModelParams
from .rates import bose, correlator_S, rates_env

__all__ = [
    "LiouvillianParts",
    "unitary_part",
    "environment_part",
    "probe_same_world",
    "probe_cross_world",
    "assemble",
    "oracle_assemble",
]

# Dense 4^M x 4^M storage; M = 7 is a 16384^2 complex matrix (~4 GiB).
MAX_REPLICAS = 7

# Oracle cost grows as 16^M; it exists to cross-check small cases.
MAX_ORACLE_REPLICAS = 3


@dataclass(frozen=True)
class LiouvillianParts:
    """The four generator parts and their sum, all of dimension 4^M."""

    unitary: np.ndarray
    environment: np.ndarray
    probe_same: np.ndarray
    probe_cross: np.ndarray
    total: np.ndarray
    M: int
    params: ModelParams


def _check_replicas(M: int, limit: int = MAX_REPLICAS) -> None:
    if not isinstance(M, int) or M < 1:
        raise ValueError(f"replica count must be an integer >= 1, got {M!r}")
    if M > limit:
        raise ValueError(f"replica count {M} exceeds the dense-storage limit {limit}")


def _single_qubit_h(params: ModelParams) -> np.ndarray:
    return -0.5 * params.delta * PAULI_Z + 0.5 * params.Omega * PAULI_X


def unitary_part(M: int, params: ModelParams) -> np.ndarray:
    """-i [H, .] summed over replicas."""
    _check_replicas(M)
    h1 = _single_qubit_h(params)
    H = sum(operator_on_replica(h1, k, M) for k in range(1, M + 1))
    return -1j * commutator_super(H)


def environment_part(M: int, params: ModelParams) -> np.ndarray:
    """Per-replica environment dissipator plus its Lamb shift.

    The anticommutator and Lamb-shift terms are summed at the operator level
    (total excited / ground number operators) before lifting to
    superoperators; this is exact by linearity and keeps the 4^M matrices few.
    """
    _check_replicas(M)
    r = rates_env(params.theta_e, params.gamma_e)
    dim = 4**M
    out = np.zeros((dim, dim), dtype=complex)
    n_exc_total = np.zeros((2**M, 2**M), dtype=complex)
    n_gnd_total = np.zeros_like(n_exc_total)
    for k in range(1, M + 1):
        sk = lowering_on_replica(k, M)
        skd = sk.conj().T
        n_exc_total += skd @ sk
        n_gnd_total += sk @ skd
        out += r.up * sandwich_super(skd, sk)
        out += r.down * sandwich_super(sk, skd)
    out += -1j * params.lamb_e * commutator_super(n_exc_total)
    out -= 0.5 * r.up * anticommutator_super(n_gnd_total)
    out -= 0.5 * r.down * anticommutator_super(n_exc_total)
    return out


def probe_same_world(M: int, params: ModelParams) -> np.ndarray:
    """Intra-replica probe dissipator with M-replica rates.

    The jump terms carry single-quantum weights e^{-theta_b} (emission
    sandwich) and e^{+theta_b} (excitation sandwich); combined with the
    M-replica rates these become correlator_S(M-1) and correlator_S(1).
    """
    _check_replicas(M)
    th, gb = params.theta_b, params.gamma_b
    down_sandwich = correlator_S(M - 1, M, th, gb)  # Gamma_down^(M) e^{-theta_b}
    down_bare = correlator_S(M, M, th, gb)
    up_sandwich = correlator_S(1, M, th, gb)  # Gamma_up^(M) e^{+theta_b}
    up_bare = correlator_S(0, M, th, gb)
    dim = 4**M
    out = np.zeros((dim, dim), dtype=complex)
    n_exc_total = np.zeros((2**M, 2**M), dtype=complex)
    n_gnd_total = np.zeros_like(n_exc_total)
    for r in range(1, M + 1):
        sr = lowering_on_replica(r, M)
        srd = sr.conj().T
        n_exc_total += srd @ sr
        n_gnd_total += sr @ srd
        out += down_sandwich * sandwich_super(srd, sr)
        out += up_sandwich * sandwich_super(sr, srd)
    out += -1j * params.lamb_b * commutator_super(n_exc_total)
    out -= 0.5 * down_bare * anticommutator_super(n_exc_total)
    out -= 0.5 * up_bare * anticommutator_super(n_gnd_total)
    return out


def probe_cross_world(M: int, params: ModelParams) -> np.ndarray:
    """Inter-replica probe terms linking replica i to replica i+N.

    A hop across N replica gaps picks up a thermal delay factor e^{+-N theta_b};
    the anticommutator terms enter without the 1/2 of the Lindblad form.
    Returns the zero superoperator for M = 1.
    """
    _check_replicas(M)
    th, gb = params.theta_b, params.gamma_b
    dim = 4**M
    out = np.zeros((dim, dim), dtype=complex)
    if M == 1:
        return out
    sig = [lowering_on_replica(k, M) for k in range(1, M + 1)]

    def S(N: int) -> float:
        return correlator_S(N, M, th, gb)

    # Thermally weighted hop operator collecting every pair's anticommutator.
    hops = np.zeros((2**M, 2**M), dtype=complex)
    for i in range(1, M + 1):
        for N in range(1, M - i + 1):
            j = i + N
            si, sj = sig[i - 1], sig[j - 1]
            sid, sjd = si.conj().T, sj.conj().T
            # emission group: Gamma_down^(M) e^{-(N-1)th}, e^{-(N+1)th}, e^{-N th}
            out += S(M - N + 1) * sandwich_super(sj, sid)
            out += S(M - N - 1) * sandwich_super(sid, sj)
            hops += S(M - N) * (sid @ sj)
            # excitation group: Gamma_up^(M) e^{+(N-1)th}, e^{+(N+1)th}, e^{+N th}
            out += S(N - 1) * sandwich_super(sjd, si)
            out += S(N + 1) * sandwich_super(si, sjd)
            hops += S(N) * (si @ sjd)
    out -= anticommutator_super(hops)
    return out


def assemble(M: int, params: ModelParams, max_replicas: int = MAX_REPLICAS) -> LiouvillianParts:
    """Build all four parts and their sum."""
    _check_replicas(M, max_replicas)
    lu = unitary_part(M, params)
    le = environment_part(M, params)
    ls = probe_same_world(M, params)
    lc = probe_cross_world(M, params)
    return LiouvillianParts(
        unitary=lu,
        environment=le,
        probe_same=ls,
        probe_cross=lc,
        total=lu + le + ls + lc,
        M=M,
        params=params,
    )


def oracle_assemble(M: int, params: ModelParams) -> np.ndarray:
    """Column-by-column reference assembly for verification.

    For every basis matrix unit E_ab, the image d(R)/dt is evaluated with
    explicit matrix products, term by term from the defining equations; column
    a*2^M + b of the result is the row-major stacking of that image. No
    superoperator constructors are used, and the thermal weights are naive
    exp products rather than combined exponents.
    """
    _check_replicas(M, MAX_ORACLE_REPLICAS)
    dim = 2**M
    h1 = _single_qubit_h(params)
    H = sum(operator_on_replica(h1, k, M) for k in range(1, M + 1))
    sig = [operator_on_replica(SIGMA, k, M) for k in range(1, M + 1)]

    th_e, g_e = params.theta_e, params.gamma_e
    th_b, g_b = params.theta_b, params.gamma_b
    env_up = g_e * bose(th_e)
    env_down = env_up + g_e
    probe_up = g_b * bose(M * th_b)
    probe_down = probe_up + g_b

    def rhs(R: np.ndarray) -> np.ndarray:
        out = -1j * (H @ R - R @ H)
        for k in range(M):
            s = sig[k]
            sd = s.conj().T
            out += -1j * params.lamb_e * (sd @ s @ R - R @ sd @ s)
            out += env_up * (sd @ R @ s - 0.5 * (s @ sd @ R + R @ s @ sd))
            out += env_down * (s @ R @ sd - 0.5 * (sd @ s @ R + R @ sd @ s))
            out += -1j * params.lamb_b * (sd @ s @ R - R @ sd @ s)
            out += probe_down * (
                math.exp(-th_b) * sd @ R @ s - 0.5 * (sd @ s @ R + R @ sd @ s)
            )
            out += probe_up * (
                math.exp(th_b) * s @ R @ sd - 0.5 * (s @ sd @ R + R @ s @ sd)
            )
        for i in range(M):
            for j in range(i + 1, M):
                N = j - i
                si, sj = sig[i], sig[j]
                sid, sjd = si.conj().T, sj.conj().T
                out += probe_down * (
                    math.exp(-(N - 1) * th_b) * sj @ R @ sid
                    + math.exp(-(N + 1) * th_b) * sid @ R @ sj
                    - math.exp(-N * th_b) * (sid @ sj @ R + R @ sid @ sj)
                )
                out += probe_up * (
                    math.exp((N - 1) * th_b) * sjd @ R @ si
                    + math.exp((N + 1) * th_b) * si @ R @ sjd
                    - math.exp(N * th_b) * (si @ sjd @ R + R @ si @ sjd)
                )
        return out

    L = np.zeros((dim * dim, dim * dim), dtype=complex)
    for a in range(dim):
        for b in range(dim):
            unit = np.zeros((dim, dim), dtype=complex)
            unit[a, b] = 1.0
            L[:, a * dim + b] = rhs(unit).reshape(-1)
    return L
