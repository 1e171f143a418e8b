import numpy as np
import pytest

from replicaflow.params import SweepSpec, parse_sweep
from replicaflow.sweep import (
    CSV_HEADER,
    WARN_TOKENS,
    emit_csv,
    emit_spectra_csv,
    failed_rows,
    grid_points,
    run_sweep,
)


def small_spec(**kw):
    base = dict(
        axes=(("Omega", (0.5, 1.0, 2.0)), ("theta_e", (1.0,)), ("gamma_b", (1.0,))),
        replica_list=(1, 2),
    )
    base.update(kw)
    return SweepSpec(**base)


def test_row_ordering_replicas_innermost():
    spec = small_spec()
    rows = run_sweep(spec)
    assert [(r.Omega, r.M) for r in rows] == [
        (0.5, 1), (0.5, 2), (1.0, 1), (1.0, 2), (2.0, 1), (2.0, 2)
    ]


def test_row_count_matches_grid_size():
    spec = small_spec()
    assert len(run_sweep(spec)) == spec.grid_size == 6


def test_decoupled_probe_rows_have_zero_flow():
    spec = SweepSpec(axes=(("Omega", (0.0, 1.0)), ("gamma_b", (0.0,))), replica_list=(1, 2))
    for row in run_sweep(spec):
        assert abs(row.F_M) < 1e-10


def test_single_replica_weak_column_is_zero():
    rows = run_sweep(small_spec())
    for row in rows:
        if row.M == 1:
            assert row.F_weak_M == 0.0
        else:
            assert np.isfinite(row.F_weak_M)


def test_csv_header_and_shape(tmp_path):
    out = tmp_path / "rows.csv"
    emit_csv([], str(out))
    assert out.read_bytes() == (CSV_HEADER + "\n").encode()
    rows = run_sweep(SweepSpec(axes=(("Omega", (1.0,)), ("gamma_b", (1.0,))), replica_list=(2,)))
    emit_csv(rows, str(out))
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert lines[0] == CSV_HEADER


def test_csv_byte_determinism(tmp_path):
    spec = small_spec()
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(run_sweep(spec, workers=1), str(a))
    emit_csv(run_sweep(spec, workers=3), str(b))
    assert a.read_bytes() == b.read_bytes()


def test_weak_regime_agreement_row():
    spec = SweepSpec(
        axes=(("Omega", (0.05,)), ("theta_e", (2.0,)), ("gamma_b", (0.05,)), ("theta_b", (20.0,))),
        replica_list=(2,),
    )
    row = run_sweep(spec)[0]
    assert abs(row.F_M - row.F_weak_M) <= 0.15 * abs(row.F_weak_M)


def test_warn_tokens_in_registry():
    rows = run_sweep(small_spec())
    for row in rows:
        for token in filter(None, row.warn_flags.split(";")):
            assert token in WARN_TOKENS


def test_include_weak_off_leaves_nan_columns():
    spec = small_spec(include_weak=False)
    for row in run_sweep(spec):
        assert np.isnan(row.F_weak_M) and np.isnan(row.F_vN_weak)
        assert np.isfinite(row.F_M)


def test_dump_spectra(tmp_path):
    spec = SweepSpec(
        axes=(("Omega", (1.0,)), ("gamma_b", (1.0,))),
        replica_list=(1, 2),
        dump_spectra=True,
    )
    rows = run_sweep(spec)
    assert rows[0].eigenvalues is not None and len(rows[0].eigenvalues) == 4
    assert len(rows[1].eigenvalues) == 16
    out = tmp_path / "spec.csv"
    emit_spectra_csv(rows, str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "row,re,im"
    assert len(lines) == 1 + 4 + 16


def test_failed_rows_empty_on_healthy_grid():
    assert failed_rows(run_sweep(small_spec())) == []


def test_grid_points_document_order_from_config():
    spec = parse_sweep("theta_e = 1,2\nOmega = 3\nM = 2\ngamma_b = 1\n")
    pts = grid_points(spec)
    assert [(p.theta_e, p.Omega, m) for p, m in pts] == [(1.0, 3.0, 2), (2.0, 3.0, 2)]


def test_emit_csv_bad_path():
    with pytest.raises(OSError):
        emit_csv([], "/nonexistent-dir-xyz/rows.csv")
