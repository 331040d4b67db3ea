import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nlc2d.grid import TorusGrid


@pytest.fixture(scope="session")
def grid16():
    return TorusGrid(16, 16)


@pytest.fixture(scope="session")
def grid32():
    return TorusGrid(32, 32)


@pytest.fixture(scope="session")
def grid64():
    return TorusGrid(64, 64)


def random_bandlimited(grid, rng, kmax=5, components=1):
    """Smooth random real field(s) with modes confined to |k_i| <= kmax."""
    shape = (components, grid.nx, grid.ny) if components > 1 else (grid.nx, grid.ny)
    noise = rng.standard_normal(shape)
    mask = (np.abs(grid.KX) <= kmax) & (np.abs(grid.KY) <= kmax)
    out = np.real(np.fft.ifft2(np.fft.fft2(noise, axes=(-2, -1)) * mask, axes=(-2, -1)))
    return out / max(1e-12, np.max(np.abs(out)))


def make_state(grid, u=None, d=None, theta=None, t=0.0):
    from nlc2d.dynamics import State

    u = grid.zeros(2) if u is None else u
    if d is None:
        d = grid.zeros(3)
        d[2] = 1.0
    theta = np.ones(grid.shape) if theta is None else theta
    return State(grid=grid, u=u, d=d, theta=theta, p=np.zeros(grid.shape), t=t)


def taylor_green(grid, amplitude=1.0):
    return amplitude * np.stack(
        [np.sin(grid.X) * np.cos(grid.Y), -np.cos(grid.X) * np.sin(grid.Y)]
    )


def perturbed_unit_director(grid, amplitude=0.2):
    d = grid.zeros(3)
    d[0] = amplitude * np.sin(grid.X) * np.cos(grid.Y)
    d[1] = amplitude * np.cos(grid.X + grid.Y)
    d[2] = 1.0
    return d / np.sqrt(np.sum(d * d, axis=0))
