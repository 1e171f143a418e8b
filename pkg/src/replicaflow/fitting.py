"""Interpolation of the flow's replica dependence and von Neumann extrapolation.

The interpolating model

    f(M) = a * (M + b/(M+c) - 1 - b/(1+c))

is anchored at f(1) = 0 (one replica carries no flow); its derivative at
M = 1 is the extrapolated von Neumann flow a * (1 - b/(1+c)^2). The model is
nonconvex in (b, c), so the fit multi-starts on a coarse grid with a solved
linearly per (b, c), then refines the best candidates with damped least
squares. Everything is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize as sopt

__all__ = ["FitResult", "flow_model", "fit_flow_vs_M", "extrapolate_vN", "powerlaw_slope"]

_B_GRID = np.linspace(-10.0, 10.0, 40)
_C_GRID = np.linspace(-0.9, 10.0, 40)
# Pole exclusion around c = -1, plus a hard floor on |1+c|.
_C_EXCLUDED = (-1.1, -0.9)
_POLE_MARGIN = 1e-6
_REFINE_STARTS = 5


@dataclass(frozen=True)
class FitResult:
    a: float
    b: float
    c: float
    rms_residual: float
    s_vN: float
    points_used: tuple[tuple[int, float], ...]
    note: str | None = None


def flow_model(M, a: float, b: float, c: float):
    """a * (M + b/(M+c) - 1 - b/(1+c)); vanishes identically at M = 1.

    Grouped as (M-1) + b*(1/(M+c) - 1/(1+c)) so the anchor at M = 1 is exact
    in floating point.
    """
    M = np.asarray(M, dtype=float)
    return a * ((M - 1.0) + b * (1.0 / (M + c) - 1.0 / (1.0 + c)))


def _c_valid(c: float) -> bool:
    return math.isfinite(c) and abs(1.0 + c) > _POLE_MARGIN and not (_C_EXCLUDED[0] < c < _C_EXCLUDED[1])


def _rms(a: float, b: float, c: float, Ms: np.ndarray, ys: np.ndarray) -> float:
    r = flow_model(Ms, a, b, c) - ys
    return float(np.sqrt(np.mean(r * r)))


def fit_flow_vs_M(points: list[tuple[int, float]]) -> FitResult:
    """Deterministic multi-start least-squares fit of flow versus replica count."""
    if len(points) < 3:
        raise ValueError(f"need at least 3 points, got {len(points)}")
    Ms = np.array([m for m, _ in points], dtype=float)
    ys = np.array([f for _, f in points], dtype=float)
    if len(set(Ms.tolist())) != len(Ms):
        raise ValueError("replica counts must be distinct")
    frozen = tuple((int(m), float(f)) for m, f in points)

    if ys.max() - ys.min() == 0.0:
        # Constant data cannot constrain the shape; report the flat branch.
        result = FitResult(
            a=0.0, b=0.0, c=0.0,
            rms_residual=_rms(0.0, 0.0, 0.0, Ms, ys),
            s_vN=0.0, points_used=frozen, note="degenerate: constant flows",
        )
        return result

    # Coarse grid: solve a linearly for each (b, c).
    candidates = []
    for b in _B_GRID:
        for c in _C_GRID:
            g = (Ms - 1.0) + b * (1.0 / (Ms + c) - 1.0 / (1.0 + c))
            gg = float(g @ g)
            a = float(g @ ys) / gg if gg > 1e-30 else 0.0
            r = a * g - ys
            candidates.append((float(r @ r), float(a), float(b), float(c)))
    candidates.sort()

    best: tuple[float, float, float, float] | None = None
    for cost, a0, b0, c0 in candidates[:_REFINE_STARTS]:
        sol = sopt.least_squares(
            lambda p: flow_model(Ms, *p) - ys,
            x0=[a0, b0, c0],
            method="lm",
            xtol=1e-15,
            ftol=1e-15,
            gtol=1e-15,
            max_nfev=10000,
        )
        for a, b, c in ([tuple(sol.x)] if _c_valid(sol.x[2]) else []) + [(a0, b0, c0)]:
            rms = _rms(a, b, c, Ms, ys)
            key = (rms, a, b, c)
            if best is None or key < best:
                best = key
    assert best is not None
    rms, a, b, c = best
    return FitResult(
        a=a, b=b, c=c,
        rms_residual=rms,
        s_vN=_extrapolate(a, b, c),
        points_used=frozen,
    )


def _extrapolate(a: float, b: float, c: float) -> float:
    if abs(1.0 + c) <= _POLE_MARGIN:
        raise ValueError(f"fit parameter c = {c} is too close to the pole at -1")
    return a * (1.0 - b / (1.0 + c) ** 2)


def extrapolate_vN(fit: FitResult) -> float:
    """Model derivative at M = 1: a * (1 - b/(1+c)^2)."""
    return _extrapolate(fit.a, fit.b, fit.c)


def powerlaw_slope(points: list[tuple[float, float]]) -> float:
    """Least-squares slope of ln(value) versus ln(theta)."""
    if len(points) < 3:
        raise ValueError(f"need at least 3 points, got {len(points)}")
    th = np.array([t for t, _ in points], dtype=float)
    vals = np.array([v for _, v in points], dtype=float)
    if np.any(th <= 0) or np.any(vals <= 0):
        raise ValueError("power-law slope needs positive theta and values")
    return float(np.polyfit(np.log(th), np.log(vals), 1)[0])
