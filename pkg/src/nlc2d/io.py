"""Checkpoint binary format and diagnostics CSV writer/reader.

Checkpoint layout (all little-endian): magic "NLC2", uint8 version,
uint32 nx, ny, float64 t, M, N, uint8 mode code, float64 theta_floor,
followed by seven float64 planes (u x2, d x3, theta, p) in C order of
shape (nx, ny).  Round trips are bit-exact.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .dynamics import State
from .errors import CheckpointError
from .grid import TorusGrid

MAGIC = b"NLC2"
VERSION = 1
_HEADER = struct.Struct("<4sBIIdddBd")
_MODE_CODES = {"relaxed": 0, "constrained": 1}
_MODE_NAMES = {v: k for k, v in _MODE_CODES.items()}


def write_checkpoint(state, path, params, mode, theta_floor):
    """Persist a state plus the run's regularization levels, bit-exact."""
    g = state.grid
    header = _HEADER.pack(
        MAGIC, VERSION, g.nx, g.ny, state.t, float(params.M), float(params.N),
        _MODE_CODES[mode], float(theta_floor),
    )
    planes = [state.u[0], state.u[1], state.d[0], state.d[1], state.d[2], state.theta, state.p]
    with open(path, "wb") as fh:
        fh.write(header)
        for plane in planes:
            fh.write(np.ascontiguousarray(plane, dtype="<f8").tobytes())


def read_checkpoint(path):
    """Read a checkpoint; returns (State, meta) with meta = {M, N, mode, theta_floor}."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise CheckpointError(f"{path}: truncated header ({len(raw)} bytes)")
    magic, version, nx, ny, t, M, N, mode_code, theta_floor = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise CheckpointError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise CheckpointError(f"{path}: unsupported format version {version}")
    if mode_code not in _MODE_NAMES:
        raise CheckpointError(f"{path}: unknown mode code {mode_code}")
    expected = _HEADER.size + 7 * nx * ny * 8
    if len(raw) != expected:
        raise CheckpointError(
            f"{path}: payload length {len(raw) - _HEADER.size} does not match "
            f"header dims {nx}x{ny} (expected {expected - _HEADER.size})"
        )
    grid = TorusGrid(nx, ny)
    planes = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size).reshape(7, nx, ny)
    planes = planes.astype(np.float64)  # writable copy, native order
    state = State(
        grid=grid,
        u=planes[0:2].copy(),
        d=planes[2:5].copy(),
        theta=planes[5].copy(),
        p=planes[6].copy(),
        t=t,
    )
    meta = {"M": M, "N": N, "mode": _MODE_NAMES[mode_code], "theta_floor": theta_floor}
    return state, meta


def _g17(x):
    return format(x, ".17g")


def diagnostics_header(alphas, radii):
    cols = ["t", "kinetic", "potential", "heat", "total", "dissipation_rate",
            "min_theta", "max_d_norm_dev"]
    cols += [f"entropy_min_res_{a:g}" for a in alphas]
    cols += [f"local_energy_sup_{r:g}" for r in radii]
    cols.append("flags")
    return cols


def write_diagnostics(rows, path, alphas, radii):
    """Fixed-schema CSV with 17 significant digits; header always present."""
    cols = diagnostics_header(alphas, radii)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(cols) + "\n")
        for row in rows:
            fields = [
                _g17(row.t), _g17(row.kinetic), _g17(row.potential), _g17(row.heat),
                _g17(row.total), _g17(row.dissipation_rate), _g17(row.min_theta),
                _g17(row.max_d_norm_dev),
            ]
            fields += [_g17(v) for v in row.entropy_min]
            fields += [_g17(v) for v in row.local_sup]
            fields.append(str(row.flags))
            fh.write(",".join(fields) + "\n")


def read_diagnostics(path):
    """Read a diagnostics CSV back into a list of column->float dicts."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines:
        raise CheckpointError(f"{path}: empty diagnostics file")
    header = lines[0].split(",")
    out = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(header):
            raise CheckpointError(f"{path}: ragged row with {len(parts)} fields")
        out.append({k: float(v) for k, v in zip(header, parts)})
    return out
