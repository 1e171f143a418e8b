#!/usr/bin/env python3
"""Render publication-style figures from sweep CSV output.

Standalone consumer of the sweep CSV interface (and the re,im spectrum dumps);
it never imports or invokes the simulation package. Five kinds:

  flow-vs-drive      entropy flow versus Omega/gamma_b, one curve per theta_e
  compare-overlay    replica-route flow (red) against the weak-coupling closed
                     form (blue) versus theta_e, darker shade = stronger drive
  flow-vs-M          flow versus replica count with the interpolating model
  vn-vs-temperature  extrapolated von Neumann flow versus theta_e, log-log,
                     with a reference slope of -1
  spectrum-plane     eigenvalues scattered in the complex plane

Usage: render_figures.py --in rows.csv --kind flow-vs-drive --out fig.png
"""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
from scipy.optimize import least_squares

SWEEP_COLUMNS = [
    "M", "gamma_b", "Omega", "theta_e", "theta_b", "delta",
    "lambda0_re", "lambda0_im", "F_M", "F_weak_M", "F_vN_weak", "warn_flags",
]

KINDS = ("flow-vs-drive", "compare-overlay", "flow-vs-M", "vn-vs-temperature", "spectrum-plane")


def fail(message):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(1)


def load_sweep(path):
    df = pd.read_csv(path)
    missing = [c for c in SWEEP_COLUMNS if c not in df.columns]
    if missing:
        fail(f"{path}: missing columns {missing}")
    return df


def load_spectrum(path):
    df = pd.read_csv(path)
    if not {"re", "im"}.issubset(df.columns):
        fail(f"{path}: expected re,im columns")
    return df


def apply_select(df, select):
    for item in filter(None, (s.strip() for s in select.split(","))):
        if "=" not in item:
            fail(f"malformed selector {item!r}")
        key, value = (s.strip() for s in item.split("=", 1))
        if key not in df.columns:
            fail(f"unknown selector column {key!r}")
        df = df[np.isclose(df[key].astype(float), float(value), rtol=1e-9, atol=1e-12)]
    if df.empty:
        fail("selection matched no rows")
    return df


def replica_model(M, a, b, c):
    M = np.asarray(M, dtype=float)
    return a * ((M - 1.0) + b * (1.0 / (M + c) - 1.0 / (1.0 + c)))


def fit_replica_model(Ms, flows):
    """Plotting-grade deterministic fit of the interpolation model."""
    Ms = np.asarray(Ms, float)
    flows = np.asarray(flows, float)
    slope = (flows[-1] - flows[0]) / (Ms[-1] - Ms[0])
    best = None
    for b0, c0 in ((0.0, 1.0), (2.0, 3.0), (-2.0, 0.5), (5.0, 5.0)):
        sol = least_squares(
            lambda p: replica_model(Ms, *p) - flows,
            x0=[slope, b0, c0],
            method="lm", xtol=1e-14, ftol=1e-14, gtol=1e-14, max_nfev=5000,
        )
        if abs(1.0 + sol.x[2]) < 1e-3:
            continue
        if best is None or sol.cost < best.cost:
            best = sol
    if best is None:
        fail("replica-model fit failed")
    return best.x


def shaded_colors(values, cmap_name):
    values = np.asarray(values, float)
    span = values.max() - values.min()
    norm = (values - values.min()) / span if span > 0 else np.zeros_like(values)
    cmap = plt.get_cmap(cmap_name)
    return [cmap(0.25 + 0.65 * v) for v in norm]


def fig_flow_vs_drive(df, ax):
    df = df[df["M"] == df["M"].min()]
    thetas = sorted(df["theta_e"].unique())
    for theta, color in zip(thetas, shaded_colors(thetas, "viridis")):
        sub = df[df["theta_e"] == theta].sort_values("Omega")
        ax.plot(sub["Omega"] / sub["gamma_b"], sub["F_M"], "o-", ms=3.5,
                color=color, label=rf"$\omega/T_e={theta:g}$")
    ax.set_xscale("log")
    ax.set_xlabel(r"$\Omega/\Gamma_b$")
    ax.set_ylabel(rf"$F_{{{int(df['M'].min())}}}$  $[\Gamma_e]$")
    ax.legend(fontsize=8)


def fig_compare_overlay(df, ax):
    df = df[df["M"] == df["M"].min()]
    drives = sorted(df["Omega"].unique())
    reds = shaded_colors(drives, "Reds")
    blues = shaded_colors(drives, "Blues")
    for omega, red, blue in zip(drives, reds, blues):
        sub = df[df["Omega"] == omega].sort_values("theta_e")
        ax.plot(sub["theta_e"], sub["F_M"], "o-", ms=3, color=red,
                label=rf"replica, $\Omega={omega:g}$")
        ax.plot(sub["theta_e"], sub["F_weak_M"], "s--", ms=3, color=blue,
                label=rf"weak, $\Omega={omega:g}$")
    ax.set_xlabel(r"$\omega/T_e$")
    ax.set_ylabel(rf"$F_{{{int(df['M'].min())}}}$  $[\Gamma_e]$")
    ax.legend(fontsize=7, ncol=2)


def fig_flow_vs_m(df, ax):
    Ms = df["M"].astype(int).to_numpy()
    flows = df["F_M"].to_numpy()
    if len(Ms) < 3:
        fail("flow-vs-M needs at least 3 replica counts")
    order = np.argsort(Ms)
    Ms, flows = Ms[order], flows[order]
    a, b, c = fit_replica_model(Ms, flows)
    grid = np.linspace(1.0, Ms.max() + 0.25, 200)
    ax.plot(grid, replica_model(grid, a, b, c), "-", color="#555555",
            label=rf"fit: $a={a:.3g},\ b={b:.3g},\ c={c:.3g}$")
    ax.plot(Ms, flows, "o", color="#c0392b", label="computed flow")
    svn = a * (1.0 - b / (1.0 + c) ** 2)
    ax.plot([1.0], [0.0], "k+", ms=9)
    ax.annotate(rf"$S_{{vN}}={svn:.3g}$", xy=(1.0, 0.0), xytext=(1.1, 0.4 * flows.max()),
                arrowprops=dict(arrowstyle="->", lw=0.8), fontsize=9)
    ax.set_xlabel("replica count $M$")
    ax.set_ylabel(r"$-\Lambda_0(M)$  $[\Gamma_e]$")
    ax.legend(fontsize=8)


def fig_vn_vs_temperature(df, ax):
    thetas, svns, weaks = [], [], []
    for theta, sub in df.groupby("theta_e"):
        sub = sub[sub["M"] >= 2]
        if sub["M"].nunique() < 3:
            fail(f"theta_e={theta}: need >= 3 replica counts to extrapolate")
        sub = sub.sort_values("M")
        a, b, c = fit_replica_model(sub["M"].to_numpy(), sub["F_M"].to_numpy())
        thetas.append(theta)
        svns.append(a * (1.0 - b / (1.0 + c) ** 2))
        weaks.append(sub["F_vN_weak"].iloc[0])
    thetas = np.asarray(thetas)
    svns = np.asarray(svns)
    ax.loglog(thetas, svns, "o", color="#d35400", label=r"extrapolated $S_{vN}$")
    weaks = np.asarray(weaks)
    if np.all(np.isfinite(weaks)) and np.all(weaks > 0):
        ax.loglog(thetas, weaks, "--", color="#2980b9", lw=1.0, label=r"weak-coupling $F_{vN}$")
    anchor = svns[0] * thetas[0]
    ax.loglog(thetas, anchor / thetas, ":", color="#777777", lw=1.2, label=r"slope $-1$")
    ax.set_xlabel(r"$\omega/T_e$")
    ax.set_ylabel(r"$S_{vN}$  $[\Gamma_e]$")
    ax.legend(fontsize=8)


def fig_spectrum_plane(df, ax):
    ax.scatter(df["re"], df["im"], s=14, c="#8e44ad", edgecolors="none")
    ax.axvline(0.0, color="#999999", lw=0.8)
    ax.axhline(0.0, color="#999999", lw=0.8)
    ax.set_xlabel(r"$\mathrm{Re}\,\lambda$  $[\Gamma_e]$")
    ax.set_ylabel(r"$\mathrm{Im}\,\lambda$  $[\Gamma_e]$")


def render(args):
    plt.rcParams.update({
        "figure.figsize": (4.6, 3.4),
        "figure.dpi": 110,
        "savefig.dpi": 150,
        "font.size": 9,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "svg.hashsalt": "fixed",
    })
    fig, ax = plt.subplots()
    if args.kind == "spectrum-plane":
        df = load_spectrum(args.input)
    else:
        df = apply_select(load_sweep(args.input), args.select)
    {
        "flow-vs-drive": fig_flow_vs_drive,
        "compare-overlay": fig_compare_overlay,
        "flow-vs-M": fig_flow_vs_m,
        "vn-vs-temperature": fig_vn_vs_temperature,
        "spectrum-plane": fig_spectrum_plane,
    }[args.kind](df, ax)
    if args.title:
        ax.set_title(args.title, fontsize=9)
    fig.tight_layout()
    fig.savefig(args.out, metadata={"Software": "render_figures"} if args.out.endswith(".png") else None)
    plt.close(fig)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--in", dest="input", required=True, help="input CSV")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--out", required=True, help="output image path (.png/.svg/.pdf)")
    parser.add_argument("--select", default="", help="comma list key=value row filter")
    parser.add_argument("--title", default="")
    render(parser.parse_args(argv))
    return 0


if __name__ == "__main__":
    sys.exit(main())
