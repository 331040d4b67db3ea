"""Right-hand sides of the regularized nematic system on the torus.

The model couples velocity u, director d, and temperature theta:

    u_t + (u.grad)u + grad p = div(S_N - grad d (.) grad d),   div u = 0
    d_t + (u.grad)d = lap d + cutoff_M(|grad d|^2) d
    theta_t + u.grad theta = lap theta + S_N:grad u + |lap d + cutoff_M(|grad d|^2) d|^2

with viscous stress S_N = mu(theta)(grad u + grad u^T) + (1/N)|grad u|^(2/9) grad u.
M = inf disables the cutoff and N = inf drops the power-law term, recovering
the unregularized system.  Gradient convention: G[a, b] = d_a u_b; |grad u|
is the Frobenius norm (this makes S_N : grad u = mu/2 |strain|^2 +
(1/N)|grad u|^(20/9) hold nodewise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError, DegenerateDirectorError
from .grid import (
    TorusGrid,
    dealias,
    div_tensor,
    divergence,
    grad_components,
    grad_vector,
    gradient,
    laplacian,
    leray_project,
)

VISCOSITY_FAMILIES = ("constant", "affine", "rational")


@dataclass(frozen=True)
class ViscosityModel:
    """Temperature-dependent viscosity, continuous and pinched between bounds.

    constant:  mu = mu_upper
    affine:    mu = clip(mu_lower + slope*theta, mu_lower, mu_upper)
    rational:  mu = mu_lower + (mu_upper - mu_lower)/(1 + theta)
    """

    family: str = "constant"
    mu_lower: float = 1.0
    mu_upper: float = 1.0
    slope: float = 1.0

    def __post_init__(self):
        if self.family not in VISCOSITY_FAMILIES:
            raise ConfigError(f"viscosity family {self.family!r} not in {VISCOSITY_FAMILIES}")
        if not 0.0 < self.mu_lower <= self.mu_upper:
            raise ConfigError(f"need 0 < mu_lower <= mu_upper, got {self.mu_lower}, {self.mu_upper}")

    def __call__(self, theta):
        if self.family == "constant":
            return np.full_like(np.asarray(theta, dtype=float), self.mu_upper)
        if self.family == "affine":
            return np.clip(self.mu_lower + self.slope * theta, self.mu_lower, self.mu_upper)
        return self.mu_lower + (self.mu_upper - self.mu_lower) / (1.0 + np.maximum(theta, 0.0))


@dataclass(frozen=True)
class ApproximationParams:
    """The three regularization knobs plus the viscosity law.

    n truncates the retained Fourier modes (None = grid 2/3 band), M is the
    gradient-saturation level, N the power-law stress strength; inf disables
    either one.
    """

    M: float = math.inf
    N: float = math.inf
    n: int | None = None
    viscosity: ViscosityModel = field(default_factory=ViscosityModel)

    def __post_init__(self):
        if not self.M > 0:
            raise ConfigError(f"M must be positive, got {self.M}")
        if not self.N > 0:
            raise ConfigError(f"N must be positive, got {self.N}")
        if self.n is not None and self.n <= 0:
            raise ConfigError(f"spectral truncation n must be positive, got {self.n}")

    def validate_for_grid(self, grid):
        if self.n is not None and self.n > grid.max_truncation:
            raise ConfigError(
                f"truncation n={self.n} exceeds grid reserve {grid.max_truncation}"
            )


@dataclass(frozen=True)
class State:
    """Periodic fields at one instant; treated as immutable."""

    grid: TorusGrid
    u: np.ndarray      # (2, nx, ny)
    d: np.ndarray      # (3, nx, ny)
    theta: np.ndarray  # (nx, ny)
    p: np.ndarray      # (nx, ny)
    t: float = 0.0

    def __post_init__(self):
        shape = self.grid.shape
        if self.u.shape != (2,) + shape or self.d.shape != (3,) + shape:
            raise ConfigError("u must be (2, nx, ny) and d (3, nx, ny)")
        if self.theta.shape != shape or self.p.shape != shape:
            raise ConfigError("theta and p must be (nx, ny)")

    def with_fields(self, **kw):
        return replace(self, **kw)

    def all_finite(self):
        return all(np.all(np.isfinite(f)) for f in (self.u, self.d, self.theta, self.p))


def validate_state(state, mode="relaxed", unit_tol=1e-6, div_tol=1e-8):
    """Raise ConfigError when the state violates its invariants."""
    if not state.all_finite():
        raise ConfigError("state contains non-finite values")
    div_max = float(np.max(np.abs(divergence(state.grid, state.u))))
    if div_max > div_tol:
        raise ConfigError(f"velocity divergence {div_max:.3e} exceeds {div_tol:.1e}")
    if float(state.theta.min()) <= 0.0:
        raise ConfigError(f"temperature must stay positive, min is {state.theta.min():.3e}")
    norms = director_norm(state.d)
    if mode == "constrained":
        dev = float(np.max(np.abs(norms - 1.0)))
        if dev > unit_tol:
            raise ConfigError(f"director unit-length deviation {dev:.3e} exceeds {unit_tol:.1e}")
    else:
        excess = float(norms.max()) - 1.0
        if excess > unit_tol:
            raise ConfigError(f"director magnitude exceeds 1 by {excess:.3e}")


def director_norm(d):
    return np.sqrt(np.sum(d * d, axis=0))


def chi_cutoff(s, M):
    """Saturation min(s, M); the identity when M = inf."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("cutoff argument must be nonnegative")
    return np.minimum(s, M)


@dataclass(frozen=True)
class StressTensors:
    strain: np.ndarray    # (2, 2, nx, ny), grad u + grad u^T
    S_N: np.ndarray       # (2, 2, nx, ny)
    sigma_nd: np.ndarray  # (2, 2, nx, ny), -(grad d (.) grad d)


def viscous_stress(grid, u, theta, params):
    G = grad_vector(grid, u)
    strain = G + G.transpose(1, 0, 2, 3)
    S = params.viscosity(theta) * strain
    if math.isfinite(params.N):
        gnorm = np.sqrt(np.sum(G * G, axis=(0, 1)))
        S = S + (gnorm ** (2.0 / 9.0) / params.N) * G
    return G, strain, S


def assemble_stress(grid, u, d, theta, params):
    """Viscous stress S_N, the strain, and the director stress, nodewise."""
    _, strain, S = viscous_stress(grid, u, theta, params)
    D = grad_components(grid, d)
    sigma_nd = -np.einsum("ac...,bc...->ab...", D, D)
    return StressTensors(strain=strain, S_N=S, sigma_nd=sigma_nd)


def director_rhs(state, params):
    """lap d + cutoff(|grad d|^2) d - (u.grad)d, products dealiased."""
    g = state.grid
    D = grad_components(g, state.d)
    chi = chi_cutoff(np.sum(D * D, axis=(0, 1)), params.M)
    adv = state.u[0] * D[0] + state.u[1] * D[1]
    return laplacian(g, state.d) + dealias(g, chi * state.d - adv)


def momentum_rhs(state, params, elastic="tension"):
    """Divergence-free acceleration of u.

    elastic="tension" uses -(lap d . grad)d with the gradient part absorbed
    into pressure; elastic="full" takes div of the director stress.  Both
    agree after projection.
    """
    g = state.grid
    _, _, S = viscous_stress(g, state.u, state.theta, params)
    visc = div_tensor(g, dealias(g, S))

    G = grad_vector(g, state.u)
    adv = np.stack([
        state.u[0] * G[0, 0] + state.u[1] * G[1, 0],
        state.u[0] * G[0, 1] + state.u[1] * G[1, 1],
    ])

    D = grad_components(g, state.d)
    if elastic == "tension":
        lap_d = laplacian(g, state.d)
        force = -np.stack([np.sum(lap_d * D[0], axis=0), np.sum(lap_d * D[1], axis=0)])
    elif elastic == "full":
        sigma_nd = -np.einsum("ac...,bc...->ab...", D, D)
        force = div_tensor(g, dealias(g, sigma_nd))
    else:
        raise ConfigError(f"elastic form {elastic!r} not in ('tension', 'full')")

    return leray_project(g, visc + dealias(g, force - adv))


def heat_source(state, params):
    """Nodewise S_N : grad u + |lap d + cutoff(|grad d|^2) d|^2, dealiased."""
    g = state.grid
    G, _, S = viscous_stress(g, state.u, state.theta, params)
    viscous_heating = np.sum(S * G, axis=(0, 1))
    D = grad_components(g, state.d)
    chi = chi_cutoff(np.sum(D * D, axis=(0, 1)), params.M)
    tension = laplacian(g, state.d) + chi * state.d
    return dealias(g, viscous_heating + np.sum(tension * tension, axis=0))


def temperature_rhs(state, params):
    """lap theta - u.grad theta + heat source."""
    g = state.grid
    grad_theta = gradient(g, state.theta)
    adv = state.u[0] * grad_theta[0] + state.u[1] * grad_theta[1]
    return laplacian(g, state.theta) - dealias(g, adv) + heat_source(state, params)


def pressure_solve(state, params):
    """Zero-mean p with lap p = div div (S_N - grad d (.) grad d - u (x) u)."""
    g = state.grid
    stresses = assemble_stress(g, state.u, state.d, state.theta, params)
    T = stresses.S_N + stresses.sigma_nd - np.einsum("a...,b...->ab...", state.u, state.u)
    T = dealias(g, T)
    T_hat = np.fft.fft2(T, axes=(-2, -1))
    kk = np.stack([np.stack([g.KX * g.KX, g.KX * g.KY]), np.stack([g.KY * g.KX, g.KY * g.KY])])
    p_hat = np.sum(kk * T_hat, axis=(0, 1)) * g.inv_K2
    p_hat[0, 0] = 0.0
    return np.real(np.fft.ifft2(p_hat))


def renormalize_director(d):
    """Project d onto unit length nodewise; idempotent."""
    norms = director_norm(d)
    low = float(norms.min())
    if low <= 0.1:
        raise DegenerateDirectorError(f"director magnitude dropped to {low:.3e}; projection unreliable")
    return d / norms
