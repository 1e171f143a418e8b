"""Physical parameters and sweep configuration.

Everything is dimensionless: rates are measured in units of the environment
coupling (gamma_e = 1 by default), temperatures enter only through the
ratios theta = omega/T, and hbar = k_B = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

__all__ = ["ModelParams", "SweepSpec", "validate_params", "parse_sweep", "serialize_sweep"]

# Parameter keys accepted by config files and CLI overrides, in canonical order.
PARAM_KEYS = ("delta", "Omega", "theta_e", "theta_b", "gamma_b", "gamma_e", "lamb_e", "lamb_b")

_FLAG_KEYS = ("include_weak", "dump_spectra")


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless parameters of the driven two-reservoir qubit.

    delta    -- drive detuning (rate units)
    Omega    -- drive amplitude, >= 0 (rate units)
    theta_e  -- omega/T_e for the environment, > 0
    theta_b  -- omega/T_b for the probe reservoir, > 0; default 20 (cold probe)
    gamma_b  -- probe coupling relative to the environment, >= 0
    gamma_e  -- environment coupling, > 0, fixed to 1 in the standard setup
    lamb_e   -- environment Lamb shift (rate units)
    lamb_b   -- probe Lamb shift (rate units)
    """

    Omega: float
    theta_e: float
    gamma_b: float
    delta: float = 0.0
    theta_b: float = 20.0
    gamma_e: float = 1.0
    lamb_e: float = 0.0
    lamb_b: float = 0.0

    def __post_init__(self):
        validate_params(self)

    def with_overrides(self, **kw) -> "ModelParams":
        return replace(self, **kw)


def validate_params(p: ModelParams) -> ModelParams:
    """Check every invariant; raise ValueError naming the first violated field."""
    for name in PARAM_KEYS:
        v = getattr(p, name)
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")
    if p.theta_e <= 0:
        raise ValueError("theta_e must be > 0 (Bose factor diverges at 0)")
    if p.theta_b <= 0:
        raise ValueError("theta_b must be > 0 (Bose factor diverges at 0)")
    if p.gamma_b < 0:
        raise ValueError("gamma_b must be >= 0")
    if p.gamma_e <= 0:
        raise ValueError("gamma_e must be > 0")
    if p.Omega < 0:
        raise ValueError("Omega must be >= 0")
    return p


@dataclass(frozen=True)
class SweepSpec:
    """A parameter grid: ordered axes, replica counts, and output options.

    The grid is the Cartesian product of the axes in document order, with the
    replica list as the innermost (fastest-varying) axis.
    """

    axes: tuple[tuple[str, tuple[float, ...]], ...]
    replica_list: tuple[int, ...] = (2,)
    out_path: str | None = None
    include_weak: bool = True
    dump_spectra: bool = False

    def __post_init__(self):
        seen = set()
        for name, values in self.axes:
            if name not in PARAM_KEYS:
                raise ValueError(f"unknown parameter axis {name!r}")
            if name in seen:
                raise ValueError(f"duplicate axis {name!r}")
            if not values:
                raise ValueError(f"empty axis {name!r}")
            seen.add(name)
        if not self.replica_list:
            raise ValueError("replica list must not be empty")
        for m in self.replica_list:
            if not isinstance(m, int) or m < 1:
                raise ValueError(f"replica count must be an integer >= 1, got {m!r}")

    @property
    def grid_size(self) -> int:
        n = len(self.replica_list)
        for _, values in self.axes:
            n *= len(values)
        return n


def _parse_values(key: str, text: str) -> tuple[float, ...]:
    """Parse a scalar, a comma list, or a start:stop:count[ log] range."""
    text = text.strip()
    if ":" in text:
        log = False
        if text.endswith("log"):
            log = True
            text = text[:-3].strip()
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"malformed range for {key!r}: expected start:stop:count")
        try:
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError as exc:
            raise ValueError(f"malformed range for {key!r}: {exc}") from None
        if count < 1:
            raise ValueError(f"malformed range for {key!r}: count must be >= 1")
        if log and (start <= 0 or stop <= 0):
            raise ValueError(f"malformed range for {key!r}: log spacing needs positive endpoints")
        if count == 1:
            return (start,)
        if log:
            ratio = (stop / start) ** (1.0 / (count - 1))
            vals = [start * ratio**i for i in range(count)]
        else:
            step = (stop - start) / (count - 1)
            vals = [start + step * i for i in range(count)]
        vals[-1] = stop
        return tuple(vals)
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise ValueError(f"empty axis {key!r}")
    try:
        return tuple(float(s) for s in items)
    except ValueError:
        raise ValueError(f"malformed value list for {key!r}: {text!r}") from None


def _parse_bool(key: str, text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"malformed boolean for {key!r}: {text!r}")


def parse_sweep(text: str) -> SweepSpec:
    """Parse the key = value sweep grammar into a SweepSpec.

    Recognized keys: the ModelParams fields (axes), `M` (replica list),
    `out` (output path), `include_weak`, `dump_spectra`. `#` starts a comment.
    """
    axes: list[tuple[str, tuple[float, ...]]] = []
    replica_list: tuple[int, ...] | None = None
    out_path: str | None = None
    flags: dict[str, bool] = {}
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in seen:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        seen.add(key)
        if key in PARAM_KEYS:
            axes.append((key, _parse_values(key, value)))
        elif key == "M":
            vals = _parse_values(key, value)
            ints = []
            for v in vals:
                if v != int(v):
                    raise ValueError(f"line {lineno}: M values must be integers, got {v}")
                ints.append(int(v))
            replica_list = tuple(ints)
        elif key == "out":
            out_path = value
        elif key in _FLAG_KEYS:
            flags[key] = _parse_bool(key, value)
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    return SweepSpec(
        axes=tuple(axes),
        replica_list=replica_list if replica_list is not None else (2,),
        out_path=out_path,
        **flags,
    )


def serialize_sweep(spec: SweepSpec) -> str:
    """Emit config text that parses back to an identical SweepSpec."""
    lines = []
    for name, values in spec.axes:
        lines.append(f"{name} = " + ",".join(f"{v:.17g}" for v in values))
    lines.append("M = " + ",".join(str(m) for m in spec.replica_list))
    if spec.out_path is not None:
        lines.append(f"out = {spec.out_path}")
    lines.append(f"include_weak = {'true' if spec.include_weak else 'false'}")
    lines.append(f"dump_spectra = {'true' if spec.dump_spectra else 'false'}")
    return "\n".join(lines) + "\n"
