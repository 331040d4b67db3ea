"""Config round-trip, checkpoint bit-exactness, diagnostics CSV determinism."""

import math

import numpy as np
import pytest

from conftest import make_state, random_bandlimited

from nlc2d.config import format_config, parse_config, reference_config
from nlc2d.diagnostics import DiagnosticsRow
from nlc2d.dynamics import ApproximationParams
from nlc2d.errors import CheckpointError, ConfigError
from nlc2d.grid import TorusGrid, leray_project
from nlc2d.io import read_checkpoint, read_diagnostics, write_checkpoint, write_diagnostics

MINIMAL = """
[grid]
nx = 32
ny = 32

[scheme]
dt = 0.01
t_end = 0.1
"""


class TestConfigParsing:
    def test_minimal_with_defaults(self):
        cfg = parse_config(MINIMAL)
        assert cfg.grid.nx == 32
        assert math.isinf(cfg.params.M) and math.isinf(cfg.params.N)
        assert cfg.scheme.scheme == "imex2"
        assert cfg.mode == "relaxed"
        assert cfg.ic.kind == "constant"
        assert cfg.eps0 > 0  # calibrated default is recorded, not hard-coded

    def test_zero_theta_floor_rejected(self):
        text = MINIMAL + "\n[params]\ntheta_floor = 0.0\n"
        with pytest.raises(ConfigError, match="theta_floor"):
            parse_config(text)

    def test_inf_sentinel_disables_cutoff(self):
        text = MINIMAL + "\n[params]\nm = inf\nn_stress = inf\n"
        cfg = parse_config(text)
        assert math.isinf(cfg.params.M) and math.isinf(cfg.params.N)

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config(MINIMAL + "\n[params]\nviscosity_exponent = 2\n")

    def test_unknown_section_rejected(self):
        with pytest.raises(ConfigError, match="unknown section"):
            parse_config(MINIMAL + "\n[forcing]\nf = 1\n")

    def test_missing_required_named(self):
        with pytest.raises(ConfigError, match="t_end"):
            parse_config("[grid]\nnx = 16\nny = 16\n\n[scheme]\ndt = 0.01\n")

    def test_bad_value_named(self):
        with pytest.raises(ConfigError, match="dt"):
            parse_config("[grid]\nnx = 16\nny = 16\n\n[scheme]\ndt = fast\nt_end = 1\n")

    def test_theta0_below_floor_rejected(self):
        text = MINIMAL + "\n[params]\ntheta_floor = 2.0\n"
        with pytest.raises(ConfigError, match="theta0"):
            parse_config(text)

    def test_roundtrip_identity(self):
        text = MINIMAL + """
[params]
m = 10.0
n_stress = 100.0
viscosity = affine
mu_lower = 0.5
mu_upper = 2.0
mode = constrained

[ic]
type = defect_pair
separation = 2.5
core_radius = 0.6

[diagnostics]
alphas = 0.25, 0.5
eps0 = 1.25
radii = 0.8, 1.2
"""
        cfg = parse_config(text)
        assert parse_config(format_config(cfg)) == cfg

    def test_reference_config_documents_all_keys(self):
        ref = reference_config()
        for key in ("nx", "m = inf", "eps0", "checkpoint_stride", "r_monitor"):
            assert key in ref
        # the reference is itself parseable once required keys are filled in
        filled = ref.replace("nx = <required>", "nx = 16").replace(
            "ny = <required>", "ny = 16"
        ).replace("dt = <required>", "dt = 0.01").replace("t_end = <required>", "t_end = 0.1")
        parse_config(filled)


class TestCheckpoint:
    def _random_state(self, grid, seed=0):
        rng = np.random.default_rng(seed)
        return make_state(
            grid,
            u=leray_project(grid, random_bandlimited(grid, rng, kmax=6, components=2)),
            d=random_bandlimited(grid, rng, kmax=6, components=3),
            theta=2.0 + random_bandlimited(grid, rng, kmax=6),
            t=0.375,
        )

    def test_bit_exact_roundtrip(self, grid32, tmp_path):
        state = self._random_state(grid32)
        path = tmp_path / "state.nlc2"
        params = ApproximationParams(M=8.0, N=50.0)
        write_checkpoint(state, path, params, "constrained", 0.5)
        back, meta = read_checkpoint(path)
        for a, b in ((state.u, back.u), (state.d, back.d), (state.theta, back.theta), (state.p, back.p)):
            assert np.array_equal(a, b)
        assert back.t == state.t
        assert meta == {"M": 8.0, "N": 50.0, "mode": "constrained", "theta_floor": 0.5}

    def test_inf_levels_roundtrip(self, grid32, tmp_path):
        state = self._random_state(grid32)
        path = tmp_path / "state.nlc2"
        write_checkpoint(state, path, ApproximationParams(), "relaxed", 0.5)
        _, meta = read_checkpoint(path)
        assert math.isinf(meta["M"]) and math.isinf(meta["N"])

    def test_truncated_payload(self, grid32, tmp_path):
        state = self._random_state(grid32)
        path = tmp_path / "state.nlc2"
        write_checkpoint(state, path, ApproximationParams(), "relaxed", 0.5)
        data = path.read_bytes()
        path.write_bytes(data[:-100])
        with pytest.raises(CheckpointError, match="does not match"):
            read_checkpoint(path)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bogus.nlc2"
        path.write_bytes(b"XXXX" + b"\0" * 100)
        with pytest.raises(CheckpointError, match="magic"):
            read_checkpoint(path)

    def test_short_file(self, tmp_path):
        path = tmp_path / "tiny.nlc2"
        path.write_bytes(b"NL")
        with pytest.raises(CheckpointError, match="truncated"):
            read_checkpoint(path)

    def test_bad_version(self, grid32, tmp_path):
        state = self._random_state(grid32)
        path = tmp_path / "state.nlc2"
        write_checkpoint(state, path, ApproximationParams(), "relaxed", 0.5)
        data = bytearray(path.read_bytes())
        data[4] = 99
        path.write_bytes(bytes(data))
        with pytest.raises(CheckpointError, match="version"):
            read_checkpoint(path)


def _rows():
    return [
        DiagnosticsRow(t=0.0, kinetic=1.0, potential=2.0, heat=3.0, total=6.0,
                       dissipation_rate=0.5, min_theta=1.0, max_d_norm_dev=0.0,
                       entropy_min=(math.nan, -1e-6), local_sup=(0.25,), flags=0),
        DiagnosticsRow(t=0.1, kinetic=0.9, potential=1.9, heat=3.2, total=6.0,
                       dissipation_rate=0.4, min_theta=1.0, max_d_norm_dev=1e-9,
                       entropy_min=(-2e-6, -1e-7), local_sup=(0.3,), flags=1),
    ]


class TestDiagnosticsCsv:
    ALPHAS = (0.25, 0.5)
    RADII = (0.8,)

    def test_header_only_for_empty(self, tmp_path):
        path = tmp_path / "diag.csv"
        write_diagnostics([], path, self.ALPHAS, self.RADII)
        text = path.read_text()
        assert text.startswith("t,kinetic,potential,heat,total,dissipation_rate,min_theta,")
        assert "entropy_min_res_0.25" in text and "local_energy_sup_0.8" in text
        assert len(text.splitlines()) == 1

    def test_roundtrip_via_bundled_reader(self, tmp_path):
        path = tmp_path / "diag.csv"
        write_diagnostics(_rows(), path, self.ALPHAS, self.RADII)
        rows = read_diagnostics(path)
        assert len(rows) == 2
        assert rows[1]["local_energy_sup_0.8"] == 0.3
        assert rows[1]["flags"] == 1.0
        assert math.isnan(rows[0]["entropy_min_res_0.25"])

    def test_byte_identical_rewrites(self, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_diagnostics(_rows(), p1, self.ALPHAS, self.RADII)
        write_diagnostics(_rows(), p2, self.ALPHAS, self.RADII)
        assert p1.read_bytes() == p2.read_bytes()

    def test_seventeen_digits(self, tmp_path):
        import dataclasses

        row = dataclasses.replace(_rows()[0], kinetic=1.0 / 3.0)
        path = tmp_path / "d.csv"
        write_diagnostics([row], path, self.ALPHAS, self.RADII)
        assert "0.33333333333333331" in path.read_text()
