"""Grid, transform, operator, projection, and ball-integral tests."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_bandlimited
from oracles import ball_integral_direct, convergence_rate, fd_gradient, fd_poisson_zero_mean

from nlc2d.errors import ConfigError, ResolutionError
from nlc2d.grid import (
    TorusGrid,
    apply_operator,
    ball_integrals,
    dealias,
    divergence,
    gradient,
    integral,
    inverse_laplacian_zero_mean,
    inverse_transform,
    laplacian,
    leray_project,
    transform,
    truncate_modes,
)


class TestGridConstruction:
    def test_spacing_and_nodes(self, grid64):
        assert grid64.hx == pytest.approx(2 * np.pi / 64)
        assert grid64.x[0] == pytest.approx(-np.pi)
        assert grid64.x[-1] == pytest.approx(np.pi - grid64.hx)

    @pytest.mark.parametrize("nx,ny", [(7, 16), (16, 7), (4, 16), (16, 6)])
    def test_rejects_odd_or_small(self, nx, ny):
        with pytest.raises(ConfigError):
            TorusGrid(nx, ny)

    def test_rectangular_allowed(self):
        g = TorusGrid(16, 32)
        assert g.hy == pytest.approx(g.hx / 2)


class TestTransform:
    def test_constant_field(self, grid16):
        sf = transform(grid16, np.ones(grid16.shape))
        assert sf.amplitude(0, 0) == pytest.approx(1.0)
        c = sf.coeffs.copy()
        c[0, 0] = 0.0
        assert np.abs(c).max() < 1e-12

    def test_single_mode_sin_x(self, grid16):
        sf = transform(grid16, np.sin(grid16.X))
        amps = sf.coeffs / (grid16.nx * grid16.ny)
        nonzero = np.argwhere(np.abs(amps) > 1e-13)
        assert sorted(map(tuple, nonzero)) == [(1, 0), (grid16.nx - 1, 0)]
        assert sf.amplitude(1, 0) == pytest.approx(-0.5j)
        assert sf.amplitude(-1, 0) == pytest.approx(0.5j)

    def test_roundtrip_random_bandlimited(self, grid64):
        f = random_bandlimited(grid64, np.random.default_rng(7), kmax=20)
        assert np.max(np.abs(inverse_transform(transform(grid64, f)) - f)) < 1e-13

    def test_linearity(self, grid16):
        rng = np.random.default_rng(3)
        f, g = rng.standard_normal(grid16.shape), rng.standard_normal(grid16.shape)
        lhs = transform(grid16, 2.0 * f + 3.0 * g).coeffs
        rhs = 2.0 * transform(grid16, f).coeffs + 3.0 * transform(grid16, g).coeffs
        assert np.allclose(lhs, rhs, atol=1e-10)

    def test_hermitian_symmetry_of_real_field(self, grid16):
        f = np.cos(grid16.X) * np.sin(2 * grid16.Y) + 0.3
        assert transform(grid16, f).hermitian

    def test_dimension_mismatch(self, grid16):
        with pytest.raises(ConfigError):
            transform(grid16, np.zeros((8, 8)))

    def test_parseval(self, grid64):
        f = random_bandlimited(grid64, np.random.default_rng(11), kmax=15)
        grid_sum = np.sum(f**2)
        coeff_sum = np.sum(np.abs(transform(grid64, f).coeffs) ** 2) / (grid64.nx * grid64.ny)
        assert abs(grid_sum - coeff_sum) <= 1e-12 * abs(grid_sum)


class TestOperators:
    def test_gradient_of_sin_x(self, grid64):
        g = gradient(grid64, np.sin(grid64.X))
        assert np.max(np.abs(g[0] - np.cos(grid64.X))) < 1e-12
        assert np.max(np.abs(g[1])) < 1e-12

    def test_laplacian_of_constant(self, grid16):
        assert np.max(np.abs(laplacian(grid16, np.full(grid16.shape, 2.5)))) < 1e-12

    def test_gradient_matches_fd_oracle(self, grid64):
        f = random_bandlimited(grid64, np.random.default_rng(5), kmax=2)
        spec = gradient(grid64, f)
        fd = fd_gradient(f, grid64.hx, grid64.hy)
        # second-order oracle at 64^2 on |k|<=2 data: error ~ |df| (k h)^2 / 6
        assert np.max(np.abs(spec - fd)) < 0.05

    def test_inverse_laplacian_cos_2y(self, grid16):
        out = inverse_laplacian_zero_mean(grid16, -np.cos(2 * grid16.Y))
        assert np.max(np.abs(out - np.cos(2 * grid16.Y) / 4)) < 1e-10

    def test_fd_poisson_oracle_converges_to_quarter_cos(self):
        errs = []
        for n in (16, 32, 64, 128):
            g = TorusGrid(n, n)
            sol = fd_poisson_zero_mean(-np.cos(2 * g.Y), g.hx, g.hy)
            errs.append(np.max(np.abs(sol - np.cos(2 * g.Y) / 4)))
        assert convergence_rate(errs) == pytest.approx(2.0, abs=0.1)

    def test_inverse_laplacian_warns_on_mean(self, grid16):
        with pytest.warns(UserWarning, match="mean"):
            out = inverse_laplacian_zero_mean(grid16, 1.0 + np.cos(grid16.X))
        assert abs(np.mean(out)) < 1e-13

    def test_inverse_then_forward_is_identity_on_zero_mean(self, grid32):
        f = random_bandlimited(grid32, np.random.default_rng(9), kmax=8)
        f -= f.mean()
        assert np.max(np.abs(laplacian(grid32, inverse_laplacian_zero_mean(grid32, f)) - f)) < 1e-11

    def test_apply_operator_dispatch(self, grid16):
        f = np.sin(grid16.X)
        assert np.allclose(apply_operator(grid16, f, "gradient"), gradient(grid16, f))
        assert np.allclose(apply_operator(grid16, f, "laplacian"), laplacian(grid16, f))
        with pytest.raises(ConfigError, match="unknown operator"):
            apply_operator(grid16, f, "curl")

    def test_divergence(self, grid32):
        u = np.stack([np.sin(grid32.X), np.cos(grid32.Y)])
        expect = np.cos(grid32.X) - np.sin(grid32.Y)
        assert np.max(np.abs(divergence(grid32, u) - expect)) < 1e-12


class TestLerayProjection:
    def test_pure_gradient_maps_to_zero(self, grid32):
        u = np.stack([np.sin(grid32.X), np.zeros(grid32.shape)])  # = grad(-cos x)
        assert np.max(np.abs(leray_project(grid32, u))) < 1e-13

    def test_divergence_free_unchanged(self, grid32):
        u = np.stack([np.sin(grid32.Y), np.zeros(grid32.shape)])
        assert np.max(np.abs(leray_project(grid32, u) - u)) < 1e-13

    def test_linearity_combination(self, grid32):
        u = np.stack([np.sin(grid32.X) + np.sin(grid32.Y), np.zeros(grid32.shape)])
        expect = np.stack([np.sin(grid32.Y), np.zeros(grid32.shape)])
        assert np.max(np.abs(leray_project(grid32, u) - expect)) < 1e-13

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_idempotent_and_divfree_on_random_fields(self, seed):
        grid = TorusGrid(32, 32)
        u = random_bandlimited(grid, np.random.default_rng(seed), kmax=9, components=2)
        pu = leray_project(grid, u)
        assert np.max(np.abs(leray_project(grid, pu) - pu)) < 1e-12
        assert np.max(np.abs(divergence(grid, pu))) < 1e-10


class TestModeTruncation:
    def test_dealias_removes_high_modes(self, grid16):
        f = np.cos(7 * grid16.X)
        assert np.max(np.abs(dealias(grid16, f))) < 1e-13

    def test_truncate_modes(self, grid32):
        f = np.cos(3 * grid32.X) + np.cos(9 * grid32.Y)
        out = truncate_modes(grid32, f, 5)
        assert np.max(np.abs(out - np.cos(3 * grid32.X))) < 1e-12

    def test_truncation_level_validated(self, grid16):
        with pytest.raises(ConfigError):
            truncate_modes(grid16, np.zeros(grid16.shape), grid16.max_truncation + 1)


class TestBallIntegrals:
    def test_zero_field(self, grid64):
        assert np.max(np.abs(ball_integrals(grid64, np.zeros(grid64.shape), 1.0))) < 1e-14

    def test_constant_field_gives_ball_area(self, grid64):
        c = 2.0
        g = ball_integrals(grid64, np.full(grid64.shape, c), 1.0)
        assert np.max(np.abs(g - c * np.pi)) < 0.02 * c * np.pi

    def test_gaussian_bump_unit_mass(self, grid64):
        sigma = 0.15
        rho2 = grid64.X**2 + grid64.Y**2
        f = np.exp(-rho2 / (2 * sigma**2))
        f /= integral(grid64, f)
        g = ball_integrals(grid64, f, 1.0)
        ic, jc = grid64.nx // 2, grid64.ny // 2  # the origin node
        assert g[ic, jc] == pytest.approx(1.0, abs=1e-6)
        ix = np.argmin(np.abs(grid64.x - 2.0))
        assert abs(g[ix, jc]) < 1e-6
        direct = ball_integral_direct(grid64, f, 1.0, ic, jc)
        assert g[ic, jc] == pytest.approx(direct, abs=1e-6)

    def test_radius_below_three_cells(self, grid64):
        with pytest.raises(ResolutionError):
            ball_integrals(grid64, np.ones(grid64.shape), 2.0 * grid64.hx)

    def test_radius_above_pi(self, grid64):
        with pytest.raises(ConfigError):
            ball_integrals(grid64, np.ones(grid64.shape), 3.5)

    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_monotone_in_field(self, seed):
        grid = TorusGrid(32, 32)
        rng = np.random.default_rng(seed)
        f1 = rng.random(grid.shape)
        f2 = f1 + rng.random(grid.shape)
        g1 = ball_integrals(grid, f1, 1.0)
        g2 = ball_integrals(grid, f2, 1.0)
        assert np.all(g1 <= g2 + 1e-10)

    def test_monotone_in_radius(self, grid64):
        f = np.abs(random_bandlimited(grid64, np.random.default_rng(2), kmax=6))
        g_small = ball_integrals(grid64, f, 0.5)
        g_large = ball_integrals(grid64, f, 1.0)
        assert np.all(g_small <= g_large * 1.02 + 1e-10)

    def test_nonnegative_for_nonnegative_field(self, grid64):
        f = np.abs(random_bandlimited(grid64, np.random.default_rng(4), kmax=8))
        assert ball_integrals(grid64, f, 0.8).min() > -1e-10
