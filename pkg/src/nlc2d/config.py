"""Run configuration: INI parsing, validation, and round-trip printing.

Sections are [grid] [params] [scheme] [ic] [diagnostics] [output]; unknown
sections or keys are rejected.  ``reference_config`` emits a fully
commented file documenting every key and default.
"""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import ApproximationParams, ViscosityModel
from .errors import ConfigError
from .grid import TorusGrid
from .initial import ICSpec, calibrate_eps0
from .stepping import MODES, SCHEMES, SchemeConfig


def _parse_float(s):
    v = float(s)
    return v


def _parse_optional_float(s):
    return None if s.lower() in ("none", "") else float(s)


def _parse_optional_int(s):
    return None if s.lower() in ("none", "") else int(s)


def _parse_bool(s):
    low = s.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _parse_floats(s):
    return tuple(float(p) for p in s.split(",") if p.strip())


_REQUIRED = object()

# section -> key -> (parser, default, help)
_SCHEMA = {
    "grid": {
        "nx": (int, _REQUIRED, "grid size in x (even, >= 8)"),
        "ny": (int, _REQUIRED, "grid size in y (even, >= 8)"),
    },
    "params": {
        "m": (_parse_float, math.inf, "gradient cutoff level; inf disables"),
        "n_stress": (_parse_float, math.inf, "power-law stress strength N; inf disables"),
        "n_modes": (_parse_optional_int, None, "spectral truncation; none = grid 2/3 band"),
        "viscosity": (str, "constant", "viscosity family: constant | affine | rational"),
        "mu_lower": (_parse_float, 1.0, "viscosity lower bound (> 0)"),
        "mu_upper": (_parse_float, 1.0, "viscosity upper bound (>= mu_lower)"),
        "mu_slope": (_parse_float, 1.0, "slope of the affine family"),
        "mode": (str, "relaxed", "director handling: relaxed | constrained"),
        "theta_floor": (_parse_float, 0.5, "assumed temperature floor (> 0)"),
    },
    "scheme": {
        "dt": (_parse_float, _REQUIRED, "time step"),
        "t_end": (_parse_float, _REQUIRED, "final time"),
        "scheme": (str, "imex2", "integrator: imex1 | imex2"),
        "mu_split": (_parse_optional_float, None, "implicit viscosity; none = mu_upper"),
        "cfl_safety": (_parse_float, 0.9, "advective CFL fraction in (0, 1]"),
        "adapt": (_parse_bool, False, "adapt dt to the advective CFL"),
    },
    "ic": {
        "type": (str, "constant", "constant | taylor_green | defect_pair | random_bandlimited"),
        "amplitude": (_parse_float, 1.0, "velocity amplitude"),
        "d_perturbation": (_parse_float, 0.0, "unit-director tilt strength"),
        "separation": (_parse_float, float(np.pi), "defect pair: core separation"),
        "core_radius": (_parse_float, 0.5, "defect pair: core length scale (>= 3 cells)"),
        "defect_amplitude": (_parse_float, 1.5, "defect pair: stereographic bump height"),
        "kmax": (int, 4, "random fields: largest mode"),
        "seed": (int, 0, "random-field seed"),
        "theta0": (_parse_float, 1.0, "uniform initial temperature (>= theta_floor)"),
    },
    "diagnostics": {
        "stride": (int, 10, "steps between diagnostics rows"),
        "snapshot_stride": (int, 10, "steps between stored snapshots"),
        "alphas": (_parse_floats, (0.25, 0.5, 0.75), "entropy exponents in (0,1)"),
        "eps0": (_parse_optional_float, None,
                 "concentration threshold; none = tenth-of-a-defect calibration"),
        "r_monitor": (int, 8, "concentration monitor radius in grid cells"),
        "radii": (_parse_floats, (0.8,), "ball radii for local-energy columns"),
    },
    "output": {
        "dir": (str, "", "output directory; empty = no files"),
        "checkpoint_stride": (int, 0, "steps between checkpoints; 0 = final only"),
    },
}


@dataclass(frozen=True)
class RunConfig:
    grid: TorusGrid
    params: ApproximationParams
    scheme: SchemeConfig
    mode: str
    theta_floor: float
    ic: ICSpec
    diag_stride: int
    snapshot_stride: int
    alphas: tuple
    eps0: float
    r_monitor: int
    radii: tuple
    out_dir: str
    checkpoint_stride: int

    @property
    def r_monitor_physical(self):
        return self.r_monitor * max(self.grid.hx, self.grid.hy)


def _collect(cp):
    values = {}
    for section in cp.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        for key in cp[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
    for section, keys in _SCHEMA.items():
        values[section] = {}
        for key, (parser, default, _help) in keys.items():
            if cp.has_option(section, key):
                raw = cp.get(section, key)
                try:
                    values[section][key] = parser(raw)
                except (ValueError, TypeError) as err:
                    raise ConfigError(f"bad value for [{section}] {key} = {raw!r}: {err}") from err
            elif default is _REQUIRED:
                raise ConfigError(f"missing required key {key!r} in section [{section}]")
            else:
                values[section][key] = default
    return values


def parse_config(text):
    """Parse INI text into a validated RunConfig."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text)
    except configparser.Error as err:
        raise ConfigError(f"malformed config: {err}") from err
    v = _collect(cp)

    grid = TorusGrid(v["grid"]["nx"], v["grid"]["ny"])
    theta_floor = v["params"]["theta_floor"]
    if not theta_floor > 0:
        raise ConfigError("theta_floor must be positive")
    mode = v["params"]["mode"]
    if mode not in MODES:
        raise ConfigError(f"mode {mode!r} not in {MODES}")
    viscosity = ViscosityModel(
        family=v["params"]["viscosity"],
        mu_lower=v["params"]["mu_lower"],
        mu_upper=v["params"]["mu_upper"],
        slope=v["params"]["mu_slope"],
    )
    params = ApproximationParams(
        M=v["params"]["m"], N=v["params"]["n_stress"], n=v["params"]["n_modes"],
        viscosity=viscosity,
    )
    params.validate_for_grid(grid)
    scheme = SchemeConfig(
        dt=v["scheme"]["dt"],
        t_end=v["scheme"]["t_end"],
        scheme=v["scheme"]["scheme"],
        mu_split=v["scheme"]["mu_split"],
        cfl_safety=v["scheme"]["cfl_safety"],
        adapt=v["scheme"]["adapt"],
    )
    ic = ICSpec(
        kind=v["ic"]["type"],
        amplitude=v["ic"]["amplitude"],
        d_perturbation=v["ic"]["d_perturbation"],
        separation=v["ic"]["separation"],
        core_radius=v["ic"]["core_radius"],
        defect_amplitude=v["ic"]["defect_amplitude"],
        kmax=v["ic"]["kmax"],
        seed=v["ic"]["seed"],
        theta0=v["ic"]["theta0"],
    )
    if ic.theta0 < theta_floor:
        raise ConfigError("theta0 must be at least theta_floor")
    for a in v["diagnostics"]["alphas"]:
        if not 0.0 < a < 1.0:
            raise ConfigError(f"entropy exponent {a} outside (0,1)")
    eps0 = v["diagnostics"]["eps0"]
    if eps0 is None:
        eps0 = calibrate_eps0(grid, ic.core_radius, ic.defect_amplitude)
    elif eps0 <= 0:
        raise ConfigError("eps0 must be positive")
    for name in ("stride", "snapshot_stride"):
        if v["diagnostics"][name] < 1:
            raise ConfigError(f"diagnostics {name} must be >= 1")
    if v["diagnostics"]["r_monitor"] < 3:
        raise ConfigError("r_monitor must be at least 3 grid cells")
    return RunConfig(
        grid=grid,
        params=params,
        scheme=scheme,
        mode=mode,
        theta_floor=theta_floor,
        ic=ic,
        diag_stride=v["diagnostics"]["stride"],
        snapshot_stride=v["diagnostics"]["snapshot_stride"],
        alphas=tuple(v["diagnostics"]["alphas"]),
        eps0=float(eps0),
        r_monitor=v["diagnostics"]["r_monitor"],
        radii=tuple(v["diagnostics"]["radii"]),
        out_dir=v["output"]["dir"],
        checkpoint_stride=v["output"]["checkpoint_stride"],
    )


def _fmt(value):
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ", ".join(repr(float(x)) for x in value)
    return str(value)


def format_config(cfg):
    """Print a RunConfig as INI text; parse(format(cfg)) == cfg."""
    v = cfg.params.viscosity
    sections = {
        "grid": {"nx": cfg.grid.nx, "ny": cfg.grid.ny},
        "params": {
            "m": cfg.params.M, "n_stress": cfg.params.N, "n_modes": cfg.params.n,
            "viscosity": v.family, "mu_lower": v.mu_lower, "mu_upper": v.mu_upper,
            "mu_slope": v.slope, "mode": cfg.mode, "theta_floor": cfg.theta_floor,
        },
        "scheme": {
            "dt": cfg.scheme.dt, "t_end": cfg.scheme.t_end, "scheme": cfg.scheme.scheme,
            "mu_split": cfg.scheme.mu_split, "cfl_safety": cfg.scheme.cfl_safety,
            "adapt": cfg.scheme.adapt,
        },
        "ic": {
            "type": cfg.ic.kind, "amplitude": cfg.ic.amplitude,
            "d_perturbation": cfg.ic.d_perturbation, "separation": cfg.ic.separation,
            "core_radius": cfg.ic.core_radius, "defect_amplitude": cfg.ic.defect_amplitude,
            "kmax": cfg.ic.kmax, "seed": cfg.ic.seed, "theta0": cfg.ic.theta0,
        },
        "diagnostics": {
            "stride": cfg.diag_stride, "snapshot_stride": cfg.snapshot_stride,
            "alphas": cfg.alphas, "eps0": cfg.eps0, "r_monitor": cfg.r_monitor,
            "radii": cfg.radii,
        },
        "output": {"dir": cfg.out_dir, "checkpoint_stride": cfg.checkpoint_stride},
    }
    out = io.StringIO()
    for section, kv in sections.items():
        out.write(f"[{section}]\n")
        for key, value in kv.items():
            out.write(f"{key} = {_fmt(value)}\n")
        out.write("\n")
    return out.getvalue()


def reference_config():
    """Generated reference file documenting every key and its default."""
    out = io.StringIO()
    out.write("# Reference configuration: every key with its default.\n")
    out.write("# 'inf' disables a regularization; 'none' selects the documented fallback.\n\n")
    for section, keys in _SCHEMA.items():
        out.write(f"[{section}]\n")
        for key, (_parser, default, help_text) in keys.items():
            shown = "<required>" if default is _REQUIRED else _fmt(default)
            out.write(f"{key} = {shown}  # {help_text}\n")
        out.write("\n")
    return out.getvalue()
