"""Run configuration, grid sampling and deterministic CSV/JSON export."""

from __future__ import annotations

import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import tomli

from .kgmodes import Convention, beam_radius, envelope_grid, gouy_relativistic
from .kinematics import BeamSpec, ModeIndex, make_kinematics
from .srmodes import beam_radius_nr, envelope_nr_grid, gouy_nonrelativistic, make_nr_kinematics

COORDS = ("xi1", "xi2", "xi3", "tau", "s")
COLUMNS = ("xi1", "xi2", "xi3", "tau", "s", "re", "im", "abs", "phase", "width", "gouy")
AXIAL = {"xi3", "tau", "s"}
DEFAULT_SEED = 20240601


class ConfigError(ValueError):
    pass


def fmt(x: float) -> str:
    """17 significant digits; enough to round-trip any double."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class GridSpec:
    """Swept axes (first axis varies slowest) plus fixed values for the rest.

    Axial values are multiplied by the Rayleigh scale when ``axial_unit`` is
    ``"rayleigh"``; otherwise all coordinates are in waist units (c = 1).
    A grid with no swept axes is a single point.
    """

    axes: tuple = ()
    ranges: dict = field(default_factory=dict)
    fixed: dict = field(default_factory=dict)
    axial_unit: str = "w0"

    def __post_init__(self):
        axes = tuple(self.axes)
        if len(axes) > 3:
            raise ConfigError(f"at most 3 swept axes allowed, got {len(axes)}")
        if len(set(axes)) != len(axes):
            raise ConfigError(f"duplicate grid axes {axes}")
        for a in axes:
            if a not in COORDS:
                raise ConfigError(f"unknown grid axis {a!r}; choose from {COORDS}")
            if a not in self.ranges:
                raise ConfigError(f"grid axis {a!r} has no (min, max, count) range")
            lo, hi, count = self.ranges[a]
            if int(count) != count or count < 2:
                raise ConfigError(f"grid axis {a!r} needs an integer count >= 2, got {count!r}")
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ConfigError(f"grid axis {a!r} needs finite min < max, got ({lo}, {hi})")
        for k, v in self.fixed.items():
            if k not in COORDS:
                raise ConfigError(f"unknown fixed coordinate {k!r}")
            if k in axes:
                raise ConfigError(f"coordinate {k!r} is both swept and fixed")
            if not math.isfinite(v):
                raise ConfigError(f"fixed coordinate {k!r} is not finite")
        given = set(axes) | set(self.fixed)
        if "s" in given and {"xi3", "tau"} <= given:
            raise ConfigError("s, xi3 and tau cannot all be specified; s = xi3 + tau")
        if self.axial_unit not in ("w0", "rayleigh"):
            raise ConfigError(f"axial_unit must be 'w0' or 'rayleigh', got {self.axial_unit!r}")
        object.__setattr__(self, "axes", axes)

    @property
    def shape(self):
        return tuple(int(self.ranges[a][2]) for a in self.axes)

    @property
    def size(self):
        return int(np.prod(self.shape)) if self.axes else 1

    def coordinates(self, axial_scale: float) -> dict[str, np.ndarray]:
        """Flattened coordinate columns in lexicographic grid order."""
        lines = [np.linspace(*self.ranges[a][:2], int(self.ranges[a][2])) for a in self.axes]
        mesh = np.meshgrid(*lines, indexing="ij") if lines else []
        n = self.size
        raw = {a: m.ravel() for a, m in zip(self.axes, mesh)}
        for k, v in self.fixed.items():
            raw[k] = np.full(n, float(v))
        scale = axial_scale if self.axial_unit == "rayleigh" else 1.0
        for k in list(raw):
            if k in AXIAL:
                raw[k] = raw[k] * scale
        xi1 = raw.get("xi1", np.zeros(n))
        xi2 = raw.get("xi2", np.zeros(n))
        if "s" in raw:
            if "tau" in raw:
                xi3, tau = raw["s"] - raw["tau"], raw["tau"]
            else:
                xi3 = raw.get("xi3", np.zeros(n))
                tau = raw["s"] - xi3
        else:
            xi3 = raw.get("xi3", np.zeros(n))
            tau = raw.get("tau", np.zeros(n))
        return {"xi1": xi1, "xi2": xi2, "xi3": xi3, "tau": tau, "s": xi3 + tau}


@dataclass(frozen=True)
class RunConfig:
    beam: BeamSpec
    mode: ModeIndex = field(default_factory=ModeIndex)
    convention: Convention = Convention.CANONICAL
    grid: GridSpec = field(default_factory=GridSpec)
    output_path: str | None = None
    output_format: str = "csv"
    seed: int = DEFAULT_SEED
    model: str = "kg"
    quantity: str = "envelope"
    verify: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"output format must be csv or json, got {self.output_format!r}")
        if self.model not in ("kg", "schrodinger"):
            raise ConfigError(f"model must be 'kg' or 'schrodinger', got {self.model!r}")
        if self.quantity not in ("envelope", "wavefunction"):
            raise ConfigError(f"quantity must be 'envelope' or 'wavefunction', got {self.quantity!r}")

    def echo(self) -> dict[str, Any]:
        return {
            "beta": self.beam.beta,
            "epsilon": self.beam.epsilon,
            "mode": [self.mode.m, self.mode.n],
            "convention": self.convention.value,
            "model": self.model,
            "quantity": self.quantity,
            "seed": self.seed,
        }


def _number(section, key, default=None, kind=float):
    if key not in section:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    v = section[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"key {key!r} must be a number, got {v!r}")
    return kind(v)


def parse_config(doc: dict) -> RunConfig:
    """Build a RunConfig from an already-parsed TOML document."""
    try:
        mode_sec = doc.get("mode", {})
        mode = ModeIndex(_number(mode_sec, "m", 0, int), _number(mode_sec, "n", 0, int))
        beam_sec = doc.get("beam", {})
        if "physical" in beam_sec:
            phys = beam_sec["physical"]
            beam = BeamSpec.from_physical(
                mass=_number(phys, "mass"), waist=_number(phys, "waist"), velocity=_number(phys, "velocity"),
                mode=mode,
            )
        else:
            beam = BeamSpec(beta=_number(beam_sec, "beta", 0.5), epsilon=_number(beam_sec, "epsilon", 0.05), mode=mode)
        field_sec = doc.get("field", {})
        grid_sec = doc.get("grid", {})
        ranges = {}
        for k, v in grid_sec.get("range", {}).items():
            if not (isinstance(v, list) and len(v) == 3):
                raise ConfigError(f"grid range for {k!r} must be [min, max, count]")
            ranges[k] = (float(v[0]), float(v[1]), v[2])
        grid = GridSpec(
            axes=tuple(grid_sec.get("axes", ())),
            ranges=ranges,
            fixed={k: float(v) for k, v in grid_sec.get("fixed", {}).items()},
            axial_unit=grid_sec.get("axial_unit", "w0"),
        )
        out = doc.get("output", {})
        return RunConfig(
            beam=beam,
            mode=mode,
            convention=Convention(field_sec.get("convention", "canonical")),
            grid=grid,
            output_path=out.get("path"),
            output_format=out.get("format", "csv"),
            seed=_number(doc, "seed", DEFAULT_SEED, int),
            model=field_sec.get("model", "kg"),
            quantity=field_sec.get("quantity", "envelope"),
            verify=dict(doc.get("verify", {})),
        )
    except ConfigError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(text: str) -> RunConfig:
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from exc
    return parse_config(doc)


def _evaluate_chunk(cfg: RunConfig, cols: dict, lo: int, hi: int):
    sl = slice(lo, hi)
    xi1, xi2, xi3, tau, s = (cols[c][sl] for c in COORDS)
    if cfg.model == "kg":
        k, g = make_kinematics(cfg.beam)
        val = envelope_grid(xi1, xi2, s, cfg.mode, k, g, cfg.convention)
        width = beam_radius(s, g, cfg.convention)
        gouy = gouy_relativistic(s, cfg.mode, g, cfg.convention)
        carrier = k.k3 * xi3 - k.omega * tau
    else:
        _, g = make_kinematics(cfg.beam)
        nk = make_nr_kinematics(cfg.beam)
        val = envelope_nr_grid(xi1, xi2, tau, cfg.mode, nk, g)
        width = beam_radius_nr(tau, nk, g)
        gouy = gouy_nonrelativistic(tau, cfg.mode, nk)
        carrier = nk.p3 * xi3 - nk.Es * tau
    if cfg.quantity == "wavefunction":
        val = val * (np.cos(carrier) + 1j * np.sin(carrier))
    return val, np.broadcast_to(width, val.shape), np.broadcast_to(gouy, val.shape)


def evaluate(cfg: RunConfig, threads: int = 1) -> dict[str, np.ndarray]:
    """Evaluate the configured field on the grid; one entry per output column.

    The flat grid is cut into contiguous chunks, one per worker, and the
    chunks are reassembled in order, so the result does not depend on the
    worker count.
    """
    _, g = make_kinematics(cfg.beam)
    axial_scale = g.zR if cfg.model == "kg" else make_nr_kinematics(cfg.beam).tR
    cols = cfg.grid.coordinates(axial_scale)
    n = cfg.grid.size
    threads = max(1, min(int(threads), n))
    bounds = np.linspace(0, n, threads + 1).astype(int)
    spans = list(zip(bounds[:-1], bounds[1:]))
    if threads == 1:
        parts = [_evaluate_chunk(cfg, cols, lo, hi) for lo, hi in spans]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda span: _evaluate_chunk(cfg, cols, *span), spans))
    val = np.concatenate([p[0] for p in parts])
    out = dict(cols)
    out.update(
        re=val.real,
        im=val.imag,
        abs=np.abs(val),
        phase=np.angle(val),
        width=np.concatenate([p[1] for p in parts]),
        gouy=np.concatenate([p[2] for p in parts]),
    )
    return out


def to_csv(table: dict[str, np.ndarray]) -> str:
    buf = io.StringIO()
    buf.write(",".join(COLUMNS) + "\n")
    cols = [table[c] for c in COLUMNS]
    for row in zip(*cols):
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def to_json(table: dict[str, np.ndarray]) -> str:
    # Numbers are written as literal 17-digit tokens rather than via json.dumps.
    cols = [table[c] for c in COLUMNS]
    rows = ",\n".join("    [" + ", ".join(fmt(v) for v in row) + "]" for row in zip(*cols))
    return '{\n  "columns": ' + json.dumps(list(COLUMNS)) + ',\n  "rows": [\n' + rows + "\n  ]\n}\n"


def render(table: dict[str, np.ndarray], fmt_name: str) -> str:
    return to_csv(table) if fmt_name == "csv" else to_json(table)


def iter_rows(text: str):
    """Parse CSV produced by :func:`to_csv` back into dict rows of floats."""
    lines = text.splitlines()
    header = lines[0].split(",")
    for line in lines[1:]:
        yield dict(zip(header, map(float, line.split(","))))


__all__ = [
    "COLUMNS",
    "ConfigError",
    "GridSpec",
    "RunConfig",
    "evaluate",
    "iter_rows",
    "load_config",
    "parse_config",
    "render",
    "to_csv",
    "to_json",
]

