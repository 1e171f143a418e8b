import math

import pytest

from replicaflow.params import ModelParams, SweepSpec, parse_sweep, serialize_sweep, validate_params


def test_valid_params_accepted():
    p = ModelParams(Omega=1.0, theta_e=1.0, gamma_b=1.0, delta=0.0, theta_b=20.0)
    assert validate_params(p) is p


def test_theta_e_zero_rejected():
    with pytest.raises(ValueError, match="theta_e must be > 0"):
        ModelParams(Omega=1.0, theta_e=0.0, gamma_b=1.0)


def test_negative_gamma_b_rejected():
    with pytest.raises(ValueError, match="gamma_b must be >= 0"):
        ModelParams(Omega=1.0, theta_e=1.0, gamma_b=-0.1)


@pytest.mark.parametrize("field,value", [
    ("Omega", -1.0),
    ("theta_b", 0.0),
    ("gamma_e", 0.0),
    ("theta_e", float("nan")),
    ("delta", float("inf")),
])
def test_invalid_fields_name_the_field(field, value):
    kwargs = dict(Omega=1.0, theta_e=1.0, gamma_b=0.5)
    kwargs[field] = value
    with pytest.raises(ValueError, match=field):
        ModelParams(**kwargs)


def test_parse_log_range_and_replicas():
    spec = parse_sweep("Omega = 0.1:10:25 log\nM = 2,3,4,5\n")
    assert len(spec.axes) == 1
    name, values = spec.axes[0]
    assert name == "Omega"
    assert len(values) == 25
    assert values[0] == pytest.approx(0.1) and values[-1] == 10.0
    ratios = [values[i + 1] / values[i] for i in range(24)]
    assert max(ratios) - min(ratios) < 1e-12
    assert spec.replica_list == (2, 3, 4, 5)


def test_parse_scalar_list():
    spec = parse_sweep("theta_e = 1,2,3")
    assert spec.axes == (("theta_e", (1.0, 2.0, 3.0)),)


def test_parse_linear_range():
    spec = parse_sweep("delta = 0:1:5")
    assert spec.axes[0][1] == (0.0, 0.25, 0.5, 0.75, 1.0)


def test_unknown_key_rejected():
    with pytest.raises(ValueError, match="unknown key"):
        parse_sweep("bogus = 1")


def test_comments_and_blank_lines():
    spec = parse_sweep("# grid\n\ntheta_e = 1,2  # two points\nM = 3\n")
    assert spec.axes == (("theta_e", (1.0, 2.0)),)
    assert spec.replica_list == (3,)


@pytest.mark.parametrize("text", [
    "Omega = 1:2",          # missing count
    "Omega = 1:2:0",        # zero count
    "Omega = -1:2:5 log",   # log with non-positive endpoint
    "Omega = a,b",
    "Omega =",
    "Omega 1",
    "M = 2.5",
])
def test_malformed_inputs_rejected(text):
    with pytest.raises(ValueError):
        parse_sweep(text)


def test_duplicate_key_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        parse_sweep("Omega = 1\nOmega = 2")


def test_flags_and_out_path():
    spec = parse_sweep("theta_e = 1\nout = rows.csv\ninclude_weak = false\ndump_spectra = true\n")
    assert spec.out_path == "rows.csv"
    assert spec.include_weak is False
    assert spec.dump_spectra is True


def test_round_trip():
    text = "Omega = 0.1:10:7 log\ntheta_e = 1,2,3\nM = 2,3\nout = x.csv\n"
    spec = parse_sweep(text)
    again = parse_sweep(serialize_sweep(spec))
    assert again == spec


def test_grid_cardinality():
    spec = parse_sweep("Omega = 1:2:4\ntheta_e = 1,2,3\nM = 2,3\n")
    assert spec.grid_size == 4 * 3 * 2


def test_replica_list_validation():
    with pytest.raises(ValueError):
        SweepSpec(axes=(("Omega", (1.0,)),), replica_list=(0,))
    with pytest.raises(ValueError):
        SweepSpec(axes=(("Omega", ()),))
    with pytest.raises(ValueError):
        SweepSpec(axes=(("nope", (1.0,)),))


def test_default_replica_list_is_two():
    assert parse_sweep("Omega = 1").replica_list == (2,)


def test_params_finiteness_check_runs_first():
    with pytest.raises(ValueError, match="finite"):
        ModelParams(Omega=float("nan"), theta_e=1.0, gamma_b=0.0)
