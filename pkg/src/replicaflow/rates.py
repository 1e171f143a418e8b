"""Thermal occupation factors and multi-replica transition rates.

Every product of a transition rate with an exponential weight that appears in
the generator is funneled through `correlator_S`, which combines exponents
analytically before evaluation. All combined exponents are <= 0, so a cold
probe (theta ~ 20..100) never overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["RatePair", "bose", "correlator_S", "rates_probe", "rates_env", "prefactor_G"]


def bose(x: float) -> float:
    """Bose occupation 1/(e^x - 1) for x > 0, overflow-safe for large x."""
    if not math.isfinite(x) or x <= 0:
        raise ValueError(f"bose factor needs x > 0, got {x!r}")
    # e^{-x} / (1 - e^{-x}) with the denominator via expm1; accurate for
    # small x (~1/x) and underflows gracefully for huge x.
    return math.exp(-x) / -math.expm1(-x)


def correlator_S(N: int, M: int, theta: float, gamma: float) -> float:
    """Reservoir correlator gamma * e^{N theta} * bose(M theta), 0 <= N <= M.

    Evaluated as gamma * e^{(N-M) theta} / (1 - e^{-M theta}) so the exponent
    never exceeds zero.
    """
    if M < 1:
        raise ValueError(f"replica count M must be >= 1, got {M}")
    if not 0 <= N <= M:
        raise ValueError(f"correlator order N={N} outside 0..M={M}")
    if not math.isfinite(theta) or theta <= 0:
        raise ValueError(f"theta must be > 0, got {theta!r}")
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma!r}")
    return gamma * math.exp((N - M) * theta) / -math.expm1(-M * theta)


@dataclass(frozen=True)
class RatePair:
    """Excitation (up) and emission (down) rates satisfying detailed balance."""

    up: float
    down: float


def _checked_pair(up: float, down: float, M: int, theta: float) -> RatePair:
    # down = up * e^{M theta}, verified in the overflow-free direction.
    if not (math.isfinite(up) and math.isfinite(down)):
        raise ValueError("rates must be finite")
    residual = abs(down * math.exp(-M * theta) - up)
    if residual > 1e-12 * max(up, down, 1e-300):
        raise ValueError(f"detailed balance violated: residual {residual}")
    return RatePair(up=up, down=down)


def rates_probe(M: int, theta_b: float, gamma_b: float) -> RatePair:
    """Probe rates at the M-replica occupation: up = gamma_b nbar(M theta_b)."""
    up = correlator_S(0, M, theta_b, gamma_b)
    down = correlator_S(M, M, theta_b, gamma_b)
    return _checked_pair(up, down, M, theta_b)


def rates_env(theta_e: float, gamma_e: float) -> RatePair:
    """Environment rates, single-quantum exchange."""
    up = correlator_S(0, 1, theta_e, gamma_e)
    down = correlator_S(1, 1, theta_e, gamma_e)
    return _checked_pair(up, down, 1, theta_e)


def prefactor_G(M: int, theta: float) -> float:
    """Weak-coupling thermal prefactor M nbar(M theta) / (nbar((M-1) theta) nbar(theta)).

    Only defined for integer M >= 2; at M = 1 the factor nbar(0) diverges.
    Evaluated in the combined form M (1-e^{-(M-1)theta})(1-e^{-theta})/(1-e^{-M theta}),
    which neither overflows nor underflows.
    """
    if M < 2:
        raise ValueError(f"prefactor_G needs M >= 2, got {M}")
    if not math.isfinite(theta) or theta <= 0:
        raise ValueError(f"theta must be > 0, got {theta!r}")
    return M * math.expm1(-(M - 1) * theta) * math.expm1(-theta) / -math.expm1(-M * theta)
