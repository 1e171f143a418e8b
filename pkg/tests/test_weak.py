import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from replicaflow.liouvillian import assemble
from replicaflow.operators import vectorize
from replicaflow.params import ModelParams
from replicaflow.rates import bose, prefactor_G, rates_probe
from replicaflow.weak import (
    QubitState,
    steady_state_qubit,
    weak_flow_renyi,
    weak_flow_vN_oscillator,
    weak_flow_vN_qubit,
)


def params(**kw):
    base = dict(Omega=1.0, theta_e=2.0, gamma_b=1.0, theta_b=20.0)
    base.update(kw)
    return ModelParams(**base)


def thermal_state(theta):
    p1 = bose(theta) / (2 * bose(theta) + 1)
    return QubitState(p0=1 - p1, p1=p1, rho01=0.0)


# ------------------------------------------------------------- steady state

def test_undriven_thermal_population():
    st_ = steady_state_qubit(params(Omega=0.0, theta_e=1.0), include_probe=False)
    assert st_.p1 == pytest.approx(1.0 / (1.0 + math.e), rel=1e-12)
    assert abs(st_.rho01) < 1e-14


def test_cold_environment_gives_ground_state():
    st_ = steady_state_qubit(params(Omega=0.0, theta_e=60.0), include_probe=False)
    assert st_.p1 < 1e-20
    assert st_.p0 == pytest.approx(1.0, rel=1e-12)


def test_steady_state_residual():
    p = params(Omega=1.0, theta_e=2.0, gamma_b=0.0)
    st_ = steady_state_qubit(p)
    L = assemble(1, p).total
    rho = np.array([[st_.p0, st_.rho01], [np.conj(st_.rho01), st_.p1]])
    residual = np.linalg.norm(L @ vectorize(rho))
    assert residual <= 1e-12 * np.linalg.norm(L)


def test_probe_inclusion_changes_state():
    with_probe = steady_state_qubit(params(Omega=0.0, theta_e=1.0, gamma_b=1.0, theta_b=5.0))
    without = steady_state_qubit(params(Omega=0.0, theta_e=1.0, gamma_b=1.0, theta_b=5.0), include_probe=False)
    assert with_probe.p1 != pytest.approx(without.p1, rel=1e-6)


def test_qubit_state_validation():
    with pytest.raises(ValueError, match="sum to 1"):
        QubitState(p0=0.6, p1=0.6, rho01=0.0)
    with pytest.raises(ValueError, match="positivity"):
        QubitState(p0=0.5, p1=0.5, rho01=0.9)


# ------------------------------------------------------------- replica flow

def test_empty_qubit_cold_probe_flow_vanishes():
    state = QubitState(p0=1.0, p1=0.0, rho01=0.0)
    f = weak_flow_renyi(params(theta_b=100.0), 2, state)
    assert abs(f) < 1e-40


def test_undriven_weak_flow_matches_emission_term():
    # For a cold probe the absorption term is exponentially small, so
    # F_2 ~ G_2 Gamma_down p1.
    p = params(Omega=0.0, theta_e=1.0, theta_b=20.0, gamma_b=0.05)
    state = steady_state_qubit(p)
    f = weak_flow_renyi(p, 2, state)
    r = rates_probe(1, p.theta_b, p.gamma_b)
    assert f == pytest.approx(prefactor_G(2, p.theta_b) * r.down * state.p1, rel=1e-6)


def test_literal_omega_flag_scales_flow():
    p = params()
    state = steady_state_qubit(p)
    base = weak_flow_renyi(p, 2, state)
    assert weak_flow_renyi(p, 2, state, literal_omega=True, omega=2.0) == pytest.approx(2 * base, rel=1e-14)


def test_replica_flow_needs_two_replicas():
    with pytest.raises(ValueError, match="M >= 2"):
        weak_flow_renyi(params(), 1, thermal_state(1.0))


@settings(max_examples=100, deadline=None)
@given(
    p1=st.floats(min_value=0.05, max_value=0.95),
    f1=st.floats(min_value=0.0, max_value=0.98),
    f2=st.floats(min_value=0.0, max_value=0.98),
)
def test_coherence_strictly_reduces_flow(p1, f1, f2):
    lo, hi = sorted([f1, f2])
    if hi - lo < 1e-6:
        return
    p = params(theta_b=4.0)
    cap = math.sqrt(p1 * (1 - p1))
    weaker = QubitState(p0=1 - p1, p1=p1, rho01=lo * cap)
    stronger = QubitState(p0=1 - p1, p1=p1, rho01=hi * cap)
    assert weak_flow_renyi(p, 2, stronger) < weak_flow_renyi(p, 2, weaker)
    assert weak_flow_vN_qubit(p, stronger) < weak_flow_vN_qubit(p, weaker)


# ------------------------------------------------------------- von Neumann

def test_vn_flow_direct_substitution():
    p = params(Omega=0.0, theta_e=1.0, theta_b=20.0, gamma_b=1.0)
    state = thermal_state(p.theta_e)
    r = rates_probe(1, p.theta_b, p.gamma_b)
    expected = (r.down * state.p1 - r.up * state.p0) * p.theta_b
    assert weak_flow_vN_qubit(p, state) == pytest.approx(expected, rel=1e-14)


def test_vn_flow_probe_equilibrated_state_vanishes():
    p = params(Omega=0.0, theta_b=2.0)
    r = rates_probe(1, p.theta_b, p.gamma_b)
    p1 = r.up / (r.up + r.down)
    state = QubitState(p0=1 - p1, p1=p1, rho01=0.0)
    assert abs(weak_flow_vN_qubit(p, state)) < 1e-15


def test_flow_sign_agreement_incoherent_hot_qubit():
    # hotter qubit, cold probe, no coherence: both flows non-negative
    p = params(Omega=0.0, theta_e=1.0, theta_b=20.0)
    state = thermal_state(p.theta_e)
    assert weak_flow_vN_qubit(p, state) >= 0
    assert weak_flow_renyi(p, 2, state) >= 0


# ------------------------------------------------------------- oscillator

def test_oscillator_equal_temperatures():
    assert weak_flow_vN_oscillator(2.0, 2.0, 1.0) == 0.0


def test_oscillator_hotter_oscillator_positive():
    assert weak_flow_vN_oscillator(1.0, 5.0, 0.3) > 0


def test_oscillator_hotter_probe_negative():
    assert weak_flow_vN_oscillator(5.0, 1.0, 0.3) < 0


def test_oscillator_sign_flips_under_swap():
    f = weak_flow_vN_oscillator(1.0, 3.0, 1.0)
    g = weak_flow_vN_oscillator(3.0, 1.0, 1.0)
    assert f > 0 > g


def test_oscillator_rejects_nonpositive_theta():
    with pytest.raises(ValueError):
        weak_flow_vN_oscillator(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        weak_flow_vN_oscillator(1.0, -2.0, 1.0)
