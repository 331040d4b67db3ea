"""Initial-condition library: analytic flows, director defects, random fields.

Directors are built exactly unit-length.  Defect pairs use a stereographic
construction: a complex bump w with a simple zero at each core, mapped to
the sphere via d = (2 Re w, 2 Im w, 1 - |w|^2)/(1 + |w|^2).  The bump's
envelope has exact compact support inside half the core separation, so the
field equals the north pole away from the cores, is exactly periodic, and
the in-plane winding about each core is exactly +-1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import State, validate_state
from .errors import ConfigError, ResolutionError
from .grid import divergence, grad_components, integral, leray_project

IC_KINDS = ("constant", "taylor_green", "defect_pair", "random_bandlimited")


@dataclass(frozen=True)
class ICSpec:
    kind: str = "constant"
    amplitude: float = 1.0          # velocity amplitude
    d_perturbation: float = 0.0     # unit-director perturbation strength
    separation: float = np.pi       # defect pair: distance between cores
    core_radius: float = 0.5        # defect pair: zero-crossing length scale
    defect_amplitude: float = 1.5   # defect pair: stereographic bump height
    kmax: int = 4                   # random fields: mode cap
    seed: int = 0                   # random fields
    theta0: float = 1.0             # uniform initial temperature

    def __post_init__(self):
        if self.kind not in IC_KINDS:
            raise ConfigError(f"initial condition kind {self.kind!r} not in {IC_KINDS}")
        if self.theta0 <= 0:
            raise ConfigError("theta0 must be positive")


def taylor_green_velocity(grid, amplitude=1.0):
    return amplitude * np.stack(
        [np.sin(grid.X) * np.cos(grid.Y), -np.cos(grid.X) * np.sin(grid.Y)]
    )


def perturbed_unit_director(grid, amplitude):
    """Constant north-pole director tilted by smooth low modes, renormalized."""
    d = grid.zeros(3)
    d[0] = amplitude * np.sin(grid.X) * np.cos(grid.Y)
    d[1] = amplitude * np.cos(grid.X + grid.Y)
    d[2] = 1.0
    return d / np.sqrt(np.sum(d * d, axis=0))


def _wrap(delta):
    return (delta + np.pi) % (2.0 * np.pi) - np.pi


def _defect_bump(grid, center, charge, core_radius, support):
    """Complex field with a simple zero of the given winding at the center."""
    dx = _wrap(grid.X - center[0])
    dy = _wrap(grid.Y - center[1])
    zeta = dx + 1j * dy if charge > 0 else dx - 1j * dy
    rho = np.hypot(dx, dy)
    envelope = np.exp(-(rho**2) / (2.0 * core_radius**2))
    s = np.clip((rho - 0.8 * support) / (0.2 * support), 0.0, 1.0)
    envelope *= 1.0 - s**3 * (6.0 * s**2 - 15.0 * s + 10.0)  # exact cutoff at support
    return (zeta / core_radius) * envelope


def defect_pair_director(grid, separation, core_radius, amplitude):
    """Unit director with a +1 core at (-sep/2, 0) and a -1 core at (+sep/2, 0)."""
    if core_radius < 3.0 * max(grid.hx, grid.hy):
        raise ResolutionError(
            f"defect core {core_radius:.4g} below 3 grid cells ({3 * max(grid.hx, grid.hy):.4g})"
        )
    if not 0 < separation < 2 * np.pi - 4 * core_radius:
        raise ConfigError(f"defect separation {separation:.4g} does not fit the torus")
    support = min(separation / 2.0, np.pi / 2.0) * 0.95
    w = amplitude * (
        _defect_bump(grid, (-separation / 2.0, 0.0), +1, core_radius, support)
        + _defect_bump(grid, (+separation / 2.0, 0.0), -1, core_radius, support)
    )
    wsq = np.abs(w) ** 2
    return np.stack([2.0 * w.real, 2.0 * w.imag, 1.0 - wsq]) / (1.0 + wsq)


def single_defect_energy(grid, core_radius, amplitude):
    """Gradient energy of one isolated smoothed degree-1 core."""
    support = 0.95 * np.pi / 2.0
    w = amplitude * _defect_bump(grid, (0.0, 0.0), +1, core_radius, support)
    wsq = np.abs(w) ** 2
    d = np.stack([2.0 * w.real, 2.0 * w.imag, 1.0 - wsq]) / (1.0 + wsq)
    D = grad_components(grid, d)
    return integral(grid, np.sum(D * D, axis=(0, 1)))


def calibrate_eps0(grid, core_radius=0.5, amplitude=1.5):
    """Concentration threshold: eps0^2 = one tenth of a single core's energy."""
    return float(np.sqrt(0.1 * single_defect_energy(grid, core_radius, amplitude)))


def winding_number(grid, d, center, radius, samples=128):
    """Winding of the in-plane director components around a circle.

    Discrete angle summation over nearest-node samples; the circle must
    avoid in-plane zeros.
    """
    phis = 2.0 * np.pi * np.arange(samples) / samples
    px = _wrap(center[0] + radius * np.cos(phis))
    py = _wrap(center[1] + radius * np.sin(phis))
    ix = np.round((px + np.pi) / grid.hx).astype(int) % grid.nx
    iy = np.round((py + np.pi) / grid.hy).astype(int) % grid.ny
    inplane = np.hypot(d[0][ix, iy], d[1][ix, iy])
    if inplane.min() < 1e-10:
        raise ConfigError("winding circle crosses an in-plane zero; adjust the radius")
    angles = np.arctan2(d[1][ix, iy], d[0][ix, iy])
    jumps = _wrap(np.diff(np.concatenate([angles, angles[:1]])))
    return int(np.round(np.sum(jumps) / (2.0 * np.pi)))


def make_initial_condition(spec, grid, theta_floor=0.5, mode="relaxed", rng=None):
    """Build a valid State from an ICSpec; hypotheses asserted at generation."""
    if spec.theta0 < theta_floor:
        raise ConfigError(f"theta0 {spec.theta0} below the floor {theta_floor}")
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    theta = np.full(grid.shape, float(spec.theta0))
    u = grid.zeros(2)
    d = grid.zeros(3)
    d[2] = 1.0

    if spec.kind == "constant":
        pass
    elif spec.kind == "taylor_green":
        u = taylor_green_velocity(grid, spec.amplitude)
        if spec.d_perturbation > 0:
            d = perturbed_unit_director(grid, spec.d_perturbation)
    elif spec.kind == "defect_pair":
        d = defect_pair_director(grid, spec.separation, spec.core_radius, spec.defect_amplitude)
    elif spec.kind == "random_bandlimited":
        mask = (np.abs(grid.KX) <= spec.kmax) & (np.abs(grid.KY) <= spec.kmax)

        def smooth(components):
            noise = rng.standard_normal((components,) + grid.shape)
            out = np.real(np.fft.ifft2(np.fft.fft2(noise, axes=(-2, -1)) * mask, axes=(-2, -1)))
            return out / max(1e-12, np.max(np.abs(out)))

        u = spec.amplitude * leray_project(grid, smooth(2))
        if spec.d_perturbation > 0:
            tilt = spec.d_perturbation * smooth(3)
            d = d + tilt
            d = d / np.sqrt(np.sum(d * d, axis=0))
        bump = smooth(1)[0]
        theta = theta + 0.5 * spec.amplitude * (bump - bump.min())

    u = leray_project(grid, u)
    state = State(grid=grid, u=u, d=d, theta=theta, p=np.zeros(grid.shape))
    validate_state(state, mode=mode, unit_tol=1e-9, div_tol=1e-10)
    if float(theta.min()) < theta_floor - 1e-12:
        raise ConfigError("generated temperature fell below the floor")
    return state
