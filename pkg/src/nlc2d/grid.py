"""Periodic grids on the torus (-pi,pi)^2 with FFT-based operators.

Transform convention (the one place it is documented): the forward transform
is unnormalized (numpy fft2), the inverse divides by nx*ny.  Mode amplitudes
in the expansion f = sum_k a_k exp(i k.x) are therefore coeffs/(nx*ny); use
``SpectralField.amplitude`` to read them.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ResolutionError

DOMAIN_AREA = 4.0 * np.pi**2

OPERATORS = ("gradient", "divergence", "laplacian", "inverse_laplacian_zero_mean")


@dataclass(frozen=True)
class TorusGrid:
    """Uniform grid on (-pi,pi)^2, x along axis 0 and y along axis 1.

    Nodes are x_i = -pi + i*hx, y_j = -pi + j*hy.  Wavenumbers are integers.
    """

    nx: int
    ny: int

    def __post_init__(self):
        if self.nx % 2 or self.ny % 2 or self.nx < 8 or self.ny < 8:
            raise ConfigError(f"grid sizes must be even and >= 8, got {self.nx}x{self.ny}")
        hx = 2.0 * np.pi / self.nx
        hy = 2.0 * np.pi / self.ny
        x = -np.pi + hx * np.arange(self.nx)
        y = -np.pi + hy * np.arange(self.ny)
        kx = np.fft.fftfreq(self.nx, d=1.0 / self.nx)
        ky = np.fft.fftfreq(self.ny, d=1.0 / self.ny)
        KX, KY = np.meshgrid(kx, ky, indexing="ij")
        K2 = KX**2 + KY**2
        inv_K2 = np.zeros_like(K2)
        inv_K2[K2 > 0] = 1.0 / K2[K2 > 0]
        # 2/3-rule mask for quadratic products
        dealias_mask = (np.abs(KX) <= self.nx // 3) & (np.abs(KY) <= self.ny // 3)
        for name, val in [
            ("hx", hx), ("hy", hy), ("x", x), ("y", y),
            ("X", np.meshgrid(x, y, indexing="ij")[0]),
            ("Y", np.meshgrid(x, y, indexing="ij")[1]),
            ("KX", KX), ("KY", KY), ("K2", K2), ("inv_K2", inv_K2),
            ("dealias_mask", dealias_mask),
            ("cell_area", hx * hy),
            ("_ball_kernel_cache", {}),
        ]:
            object.__setattr__(self, name, val)

    @property
    def shape(self):
        return (self.nx, self.ny)

    @property
    def min_spacing(self):
        return min(self.hx, self.hy)

    @property
    def max_truncation(self):
        """Largest admissible mode-truncation level (dealiasing reserve)."""
        return min(self.nx, self.ny) // 2 - 1

    def zeros(self, *lead):
        return np.zeros(lead + (self.nx, self.ny))


@dataclass
class SpectralField:
    """Fourier coefficients of a grid field (unnormalized forward transform)."""

    grid: TorusGrid
    coeffs: np.ndarray

    @property
    def hermitian(self):
        """True when the coefficients describe a real field."""
        c = self.coeffs
        flipped = np.conj(c[(-np.arange(self.grid.nx)) % self.grid.nx][:, (-np.arange(self.grid.ny)) % self.grid.ny])
        return bool(np.allclose(c, flipped, atol=1e-9 * max(1.0, np.abs(c).max())))

    def amplitude(self, k1, k2):
        """Mode amplitude a_k in f = sum a_k exp(i k.x).

        The (-1)^(k1+k2) phase accounts for the grid origin sitting at -pi.
        """
        c = self.coeffs[k1 % self.grid.nx, k2 % self.grid.ny]
        return c * (-1.0) ** ((k1 + k2) % 2) / (self.grid.nx * self.grid.ny)


def _check_shape(grid, f):
    if f.shape[-2:] != grid.shape:
        raise ConfigError(f"field shape {f.shape} does not match grid {grid.shape}")


def transform(grid, f):
    """Forward FFT of a real field (last two axes are the grid axes)."""
    _check_shape(grid, np.asarray(f))
    return SpectralField(grid, np.fft.fft2(np.asarray(f, dtype=float), axes=(-2, -1)))


def inverse_transform(sf):
    return np.real(np.fft.ifft2(sf.coeffs, axes=(-2, -1)))


def _fft(grid, f):
    _check_shape(grid, f)
    return np.fft.fft2(f, axes=(-2, -1))


def _ifft(c):
    return np.real(np.fft.ifft2(c, axes=(-2, -1)))


def gradient(grid, f):
    """Gradient of a scalar field, shape (2, nx, ny)."""
    c = _fft(grid, f)
    return np.stack([_ifft(1j * grid.KX * c), _ifft(1j * grid.KY * c)])


def grad_vector(grid, u):
    """G[a, b] = d_a u_b for a 2-component field u, shape (2, 2, nx, ny)."""
    c = _fft(grid, u)
    return np.stack([_ifft(1j * grid.KX * c), _ifft(1j * grid.KY * c)])


def grad_components(grid, d):
    """D[a, c] = d_a d_c for an m-component field d, shape (2, m, nx, ny)."""
    return grad_vector(grid, d)


def divergence(grid, u):
    c = _fft(grid, u)
    return _ifft(1j * grid.KX * c[0] + 1j * grid.KY * c[1])


def div_tensor(grid, T):
    """(div T)_b = d_a T[a, b] for T of shape (2, 2, nx, ny)."""
    c = _fft(grid, T)
    return _ifft(1j * grid.KX * c[0] + 1j * grid.KY * c[1])


def laplacian(grid, f):
    return _ifft(-grid.K2 * _fft(grid, f))


def inverse_laplacian_zero_mean(grid, f, mean_tol=1e-8):
    """Solve laplacian(g) = f with zero-mean g; the k=0 part of f is dropped."""
    c = _fft(grid, f)
    mean = abs(c[..., 0, 0]) / (grid.nx * grid.ny)
    scale = max(1.0, float(np.max(np.abs(f))))
    if np.any(mean > mean_tol * scale):
        warnings.warn(f"inverse_laplacian input has nonzero mean {float(np.max(mean)):.3e}; discarding it")
    g = -grid.inv_K2 * c
    g[..., 0, 0] = 0.0
    return _ifft(g)


def apply_operator(grid, f, op):
    """Dispatch one of the named spectral operators by name."""
    if op == "gradient":
        return gradient(grid, f)
    if op == "divergence":
        return divergence(grid, f)
    if op == "laplacian":
        return laplacian(grid, f)
    if op == "inverse_laplacian_zero_mean":
        return inverse_laplacian_zero_mean(grid, f)
    raise ConfigError(f"unknown operator {op!r}; expected one of {OPERATORS}")


def leray_project(grid, u):
    """Remove the gradient part: u - grad(inv_laplacian(div u)).

    Exact (to roundoff) divergence-free projection on band-limited fields.
    """
    c = _fft(grid, u)
    k_dot_u = grid.KX * c[0] + grid.KY * c[1]
    factor = k_dot_u * grid.inv_K2
    return _ifft(np.stack([c[0] - grid.KX * factor, c[1] - grid.KY * factor]))


def dealias(grid, f):
    """2/3-rule truncation, applied after nonlinear products."""
    return _ifft(_fft(grid, f) * grid.dealias_mask)


def truncate_modes(grid, f, n):
    """Project onto the span of modes with max(|k1|,|k2|) <= n."""
    if n is None:
        return f
    if not 0 < n <= grid.max_truncation:
        raise ConfigError(f"truncation level {n} outside (0, {grid.max_truncation}]")
    mask = (np.abs(grid.KX) <= n) & (np.abs(grid.KY) <= n)
    return _ifft(_fft(grid, f) * mask)


def integral(grid, f):
    """Domain integral by the (spectrally exact) grid-sum quadrature."""
    return float(np.sum(f, axis=(-2, -1)) * grid.cell_area)


def _ball_kernel_hat(grid, r):
    """FFT of the mollified ball indicator (2-cell smooth ramp at the rim)."""
    key = float(r)
    cached = grid._ball_kernel_cache.get(key)
    if cached is not None:
        return cached
    if len(grid._ball_kernel_cache) > 32:  # bisection sweeps use many radii
        grid._ball_kernel_cache.clear()
    delta = max(grid.hx, grid.hy)
    # displacement coordinates (index 0 = zero offset), wrapped to [-pi, pi)
    dx = (grid.hx * np.arange(grid.nx) + np.pi) % (2.0 * np.pi) - np.pi
    dy = (grid.hy * np.arange(grid.ny) + np.pi) % (2.0 * np.pi) - np.pi
    rho = np.hypot(dx[:, None], dy[None, :])
    s = np.clip((rho - (r - delta)) / (2.0 * delta), 0.0, 1.0)
    w = 1.0 - s * s * (3.0 - 2.0 * s)
    w_hat = np.fft.fft2(w)
    grid._ball_kernel_cache[key] = w_hat
    return w_hat


def ball_integrals(grid, f, r):
    """g(x) ~ integral of f over the ball of radius r centered at each node.

    Computed as periodic convolution with a mollified indicator; requires
    r of at least 3 grid cells and at most pi.
    """
    if r < 3.0 * max(grid.hx, grid.hy):
        raise ResolutionError(f"ball radius {r:.4g} below 3 grid cells ({3 * max(grid.hx, grid.hy):.4g})")
    if r > np.pi:
        raise ConfigError(f"ball radius {r:.4g} exceeds pi")
    _check_shape(grid, f)
    return _ifft(np.fft.fft2(f) * _ball_kernel_hat(grid, r)) * grid.cell_area
