"""Semi-implicit IMEX time integration of the coupled system.

Diffusion (a constant-coefficient Laplacian per field) is solved exactly
mode by mode; every nonlinear or variable-coefficient term is explicit,
including the viscosity defect (mu(theta) - mu_split), the power-law
stress, advection, the director cutoff term, and the heat source.
imex1 is backward-Euler/forward-Euler; imex2 is the two-step SBDF2
variant, bootstrapped (and re-bootstrapped after any dt change) with an
imex1 step.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .dynamics import (
    State,
    chi_cutoff,
    director_norm,
    pressure_solve,
    renormalize_director,
    viscous_stress,
)
from .errors import BlowUpError, ConfigError
from .grid import (
    dealias,
    div_tensor,
    grad_components,
    gradient,
    laplacian,
    leray_project,
    truncate_modes,
)

SCHEMES = ("imex1", "imex2")
MODES = ("relaxed", "constrained")


@dataclass(frozen=True)
class SchemeConfig:
    dt: float
    t_end: float
    scheme: str = "imex2"
    mu_split: float | None = None  # defaults to the viscosity upper bound
    cfl_safety: float = 0.9
    adapt: bool = False

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if self.t_end < 0:
            raise ConfigError(f"t_end must be nonnegative, got {self.t_end}")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"scheme {self.scheme!r} not in {SCHEMES}")
        if not 0 < self.cfl_safety <= 1:
            raise ConfigError(f"cfl_safety must be in (0, 1], got {self.cfl_safety}")


@dataclass(frozen=True)
class StepReport:
    dt: float
    max_u: float
    max_grad_d_sq: float
    min_theta: float
    max_unit_dev: float
    wall_time: float


@dataclass
class Trajectory:
    """Snapshots and per-step reports collected by ``run``."""

    states: list = field(default_factory=list)
    reports: list = field(default_factory=list)

    @property
    def times(self):
        return [s.t for s in self.states]

    @property
    def initial(self):
        return self.states[0]

    @property
    def final(self):
        return self.states[-1]


class Stepper:
    """Owns one state's time integration, including the two-step history."""

    def __init__(self, params, config, mode="relaxed", zero_explicit=False):
        if mode not in MODES:
            raise ConfigError(f"mode {mode!r} not in {MODES}")
        mu_split = config.mu_split if config.mu_split is not None else params.viscosity.mu_upper
        if mu_split < params.viscosity.mu_upper:
            raise ConfigError(
                f"mu_split {mu_split} below viscosity upper bound {params.viscosity.mu_upper}"
            )
        self.params = params
        self.config = config
        self.mode = mode
        self.mu_split = mu_split
        self._zero_explicit = zero_explicit  # test hook: pure implicit diffusion
        self._history = None  # (dt, u_hat, d_hat, th_hat, Eu_hat, Ed_hat, Eth_hat)

    def _explicit_terms(self, state):
        g = state.grid
        if self._zero_explicit:
            zero2, zero3, zero1 = g.zeros(2), g.zeros(3), g.zeros()
            return zero2, zero3, zero1

        G, strain, S = viscous_stress(g, state.u, state.theta, self.params)
        defect = (self.params.viscosity(state.theta) - self.mu_split) * strain
        if math.isfinite(self.params.N):
            gnorm = np.sqrt(np.sum(G * G, axis=(0, 1)))
            defect = defect + (gnorm ** (2.0 / 9.0) / self.params.N) * G
        visc = div_tensor(g, dealias(g, defect))

        adv_u = np.stack([
            state.u[0] * G[0, 0] + state.u[1] * G[1, 0],
            state.u[0] * G[0, 1] + state.u[1] * G[1, 1],
        ])
        D = grad_components(g, state.d)
        lap_d = laplacian(g, state.d)
        elastic = -np.stack([np.sum(lap_d * D[0], axis=0), np.sum(lap_d * D[1], axis=0)])
        E_u = leray_project(g, visc + dealias(g, elastic - adv_u))

        chi = chi_cutoff(np.sum(D * D, axis=(0, 1)), self.params.M)
        adv_d = state.u[0] * D[0] + state.u[1] * D[1]
        E_d = dealias(g, chi * state.d - adv_d)

        grad_th = gradient(g, state.theta)
        adv_th = state.u[0] * grad_th[0] + state.u[1] * grad_th[1]
        heating = np.sum(S * G, axis=(0, 1)) + np.sum((lap_d + chi * state.d) ** 2, axis=0)
        E_th = dealias(g, heating - adv_th)
        return E_u, E_d, E_th

    def _pick_dt(self, state):
        dt = self.config.dt
        if self.config.adapt:
            umax = float(np.max(np.abs(state.u)))
            if umax > 0:
                dt = min(dt, self.config.cfl_safety * state.grid.min_spacing / umax)
        remaining = self.config.t_end - state.t
        if 0 < remaining < dt:
            dt = remaining
        return dt

    def step(self, state):
        """Advance one time step; returns (new_state, StepReport)."""
        t0 = time.perf_counter()
        g = state.grid
        dt = self._pick_dt(state)

        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            return self._step_body(state, g, dt, t0)

    def _step_body(self, state, g, dt, t0):
        E_u, E_d, E_th = self._explicit_terms(state)
        hats = {
            "u": (np.fft.fft2(state.u), np.fft.fft2(E_u), self.mu_split),
            "d": (np.fft.fft2(state.d), np.fft.fft2(E_d), 1.0),
            "th": (np.fft.fft2(state.theta), np.fft.fft2(E_th), 1.0),
        }

        use_sbdf2 = (
            self.config.scheme == "imex2"
            and self._history is not None
            and self._history[0] == dt
        )
        new_hats = {}
        for idx, (name, (f_hat, e_hat, nu)) in enumerate(hats.items()):
            if use_sbdf2:
                f_prev, e_prev = self._history[1 + idx], self._history[4 + idx]
                new = (4.0 * f_hat - f_prev + 2.0 * dt * (2.0 * e_hat - e_prev)) / (
                    3.0 + 2.0 * dt * nu * g.K2
                )
            else:
                new = (f_hat + dt * e_hat) / (1.0 + dt * nu * g.K2)
            new_hats[name] = new

        u = leray_project(g, np.real(np.fft.ifft2(new_hats["u"])))
        d = np.real(np.fft.ifft2(new_hats["d"]))
        theta = np.real(np.fft.ifft2(new_hats["th"]))
        if self.params.n is not None:
            u = truncate_modes(g, u, self.params.n)
            d = truncate_modes(g, d, self.params.n)
            theta = truncate_modes(g, theta, self.params.n)
        if self.mode == "constrained":
            d = renormalize_director(d)

        new_state = State(grid=g, u=u, d=d, theta=theta, p=state.p, t=state.t + dt)
        if not new_state.all_finite():
            self._history = None
            raise BlowUpError(f"non-finite field at t={new_state.t:.6g}", last_good_state=state)
        new_state = new_state.with_fields(p=pressure_solve(new_state, self.params))

        if self.config.scheme == "imex2":
            self._history = (
                dt, hats["u"][0], hats["d"][0], hats["th"][0],
                hats["u"][1], hats["d"][1], hats["th"][1],
            )

        D = grad_components(g, new_state.d)
        report = StepReport(
            dt=dt,
            max_u=float(np.max(np.abs(new_state.u))),
            max_grad_d_sq=float(np.max(np.sum(D * D, axis=(0, 1)))),
            min_theta=float(new_state.theta.min()),
            max_unit_dev=float(np.max(np.abs(director_norm(new_state.d) - 1.0))),
            wall_time=time.perf_counter() - t0,
        )
        return new_state, report


def step(state, params, config, mode="relaxed"):
    """Single stand-alone step (imex2 degenerates to its bootstrap step)."""
    return Stepper(params, config, mode=mode).step(state)


def run(state, params, config, mode="relaxed", callbacks=(), snapshot_stride=1):
    """Step from state.t to t_end, collecting snapshots every snapshot_stride.

    Callbacks receive (step_index, state, report) after every step; the
    initial state is reported with index 0 and report None.  On blow-up
    the partial trajectory is attached to the raised error.
    """
    params.validate_for_grid(state.grid)
    stepper = Stepper(params, config, mode=mode)
    traj = Trajectory(states=[state], reports=[])
    for cb in callbacks:
        cb(0, state, None)
    i = 0
    eps = 1e-12 * max(1.0, config.t_end)
    while state.t < config.t_end - eps:
        try:
            state, report = stepper.step(state)
        except BlowUpError as err:
            err.partial_trajectory = traj
            raise
        i += 1
        traj.reports.append(report)
        if i % snapshot_stride == 0:
            traj.states.append(state)
        for cb in callbacks:
            cb(i, state, report)
    if traj.states[-1] is not state:
        traj.states.append(state)
    return traj
