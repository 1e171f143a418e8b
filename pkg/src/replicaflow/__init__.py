"""Replica Liouvillian entropy flows for a driven qubit between two reservoirs.

The package builds the M-replica generator of a driven qubit coupled to a
thermal environment and a cold probe reservoir, extracts its leading
eigenvalue to obtain the order-M entropy flow into the probe, compares
against weak-coupling closed forms, and extrapolates the von Neumann flow
from the replica dependence.
"""

from .fitting import FitResult, extrapolate_vN, fit_flow_vs_M, flow_model, powerlaw_slope
from .liouvillian import LiouvillianParts, assemble, oracle_assemble
from .params import ModelParams, SweepSpec, parse_sweep, serialize_sweep, validate_params
from .rates import RatePair, bose, correlator_S, prefactor_G, rates_env, rates_probe
from .spectrum import SpectrumResult, leading_eigenvalue, renyi_flow, spectrum
from .sweep import SweepRow, emit_csv, run_sweep
from .weak import (
    QubitState,
    steady_state_qubit,
    weak_flow_renyi,
    weak_flow_vN_oscillator,
    weak_flow_vN_qubit,
)

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "SweepSpec",
    "validate_params",
    "parse_sweep",
    "serialize_sweep",
    "RatePair",
    "bose",
    "correlator_S",
    "rates_probe",
    "rates_env",
    "prefactor_G",
    "LiouvillianParts",
    "assemble",
    "oracle_assemble",
    "SpectrumResult",
    "spectrum",
    "leading_eigenvalue",
    "renyi_flow",
    "QubitState",
    "steady_state_qubit",
    "weak_flow_renyi",
    "weak_flow_vN_qubit",
    "weak_flow_vN_oscillator",
    "FitResult",
    "flow_model",
    "fit_flow_vs_M",
    "extrapolate_vN",
    "powerlaw_slope",
    "SweepRow",
    "run_sweep",
    "emit_csv",
]
