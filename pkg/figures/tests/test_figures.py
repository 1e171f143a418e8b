"""Figure-script checks: every kind renders from the committed fixtures,
output is byte-stable, and malformed input is rejected. The script is driven
through its command-line interface only.
"""

import subprocess
import sys
from pathlib import Path

import pytest

FIGURES_DIR = Path(__file__).resolve().parents[1]
SCRIPT = FIGURES_DIR / "render_figures.py"
FIXTURES = FIGURES_DIR / "fixtures"

CASES = [
    ("flow-vs-drive", "sweep_strong.csv", ""),
    ("compare-overlay", "sweep_weak.csv", ""),
    ("flow-vs-M", "flow_vs_m.csv", ""),
    ("vn-vs-temperature", "powerlaw.csv", ""),
    ("spectrum-plane", "spectrum_demo.csv", ""),
]


def render(kind, fixture, out, select=""):
    cmd = [
        sys.executable, str(SCRIPT),
        "--in", str(FIXTURES / fixture),
        "--kind", kind,
        "--out", str(out),
    ]
    if select:
        cmd += ["--select", select]
    return subprocess.run(cmd, capture_output=True, text=True)


@pytest.mark.parametrize("kind,fixture,select", CASES)
def test_kind_renders(tmp_path, kind, fixture, select):
    out = tmp_path / f"{kind}.png"
    proc = render(kind, fixture, out, select)
    assert proc.returncode == 0, proc.stderr
    assert out.exists() and out.stat().st_size > 5000


@pytest.mark.parametrize("kind,fixture,select", CASES)
def test_output_is_byte_stable(tmp_path, kind, fixture, select):
    a = tmp_path / "a.png"
    b = tmp_path / "b.png"
    assert render(kind, fixture, a, select).returncode == 0
    assert render(kind, fixture, b, select).returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_missing_columns_rejected(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    proc = subprocess.run(
        [sys.executable, str(SCRIPT), "--in", str(bad), "--kind", "flow-vs-drive",
         "--out", str(tmp_path / "x.png")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert "missing columns" in proc.stderr


def test_empty_selection_rejected(tmp_path):
    proc = render("flow-vs-drive", "sweep_strong.csv", tmp_path / "x.png", select="theta_e=99")
    assert proc.returncode == 1
    assert "no rows" in proc.stderr


def test_select_narrows_rows(tmp_path):
    out = tmp_path / "sel.png"
    proc = render("flow-vs-drive", "sweep_strong.csv", out, select="theta_e=2")
    assert proc.returncode == 0, proc.stderr
    assert out.exists()


def test_unknown_kind_rejected(tmp_path):
    proc = subprocess.run(
        [sys.executable, str(SCRIPT), "--in", str(FIXTURES / "sweep_strong.csv"),
         "--kind", "pie-chart", "--out", str(tmp_path / "x.png")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2


def test_svg_output(tmp_path):
    out = tmp_path / "fig.svg"
    proc = render("spectrum-plane", "spectrum_demo.csv", out)
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().startswith("<?xml")
