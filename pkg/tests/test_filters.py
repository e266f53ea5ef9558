import numpy as np
import pytest

from amalgam.filters import (
    PARTITION_SUPPORT_RADIUS,
    build_filter_bank,
    lp_project,
    shell_flat_interval,
    stray_mass_fraction,
    uniform_partition,
)
from amalgam.grid import GridSpec, fourier, unit_gaussian
from amalgam.norms import lebesgue_norm
from amalgam.witnesses import make_shell_bump


class TestFilterBank:
    def test_partition_of_unity(self):
        spec = GridSpec(1, 16.0, 2**14)
        bank = build_filter_bank(spec, 8)
        total = sum(bank.filters)
        band = spec.radial(frequency=True) <= (2.0 / 3.0) * 2**8
        assert np.abs(total[band] - 1.0).max() <= 1e-9

    def test_filters_between_zero_and_one(self):
        spec = GridSpec(1, 16.0, 2**12)
        bank = build_filter_bank(spec, 6)
        for filt in bank.filters:
            assert filt.min() >= 0.0
            assert filt.max() <= 1.0 + 1e-15

    def test_shell_supports(self):
        spec = GridSpec(1, 16.0, 2**14)
        bank = build_filter_bank(spec, 6)
        rad = spec.radial(frequency=True)
        for j in range(1, 7):
            outside = (rad <= (2.0 / 3.0) * 2**j) | (rad >= 1.5 * 2**j)
            assert np.abs(bank.filters[j][outside]).max() == 0.0

    def test_pointwise_values(self):
        # base cutoff is 1 at the origin; every shell is exactly 1 at its center radius
        spec = GridSpec(1, 16.0, 2**14)
        bank = build_filter_bank(spec, 6)
        mid = spec.samples // 2
        assert bank.filters[0][mid] == 1.0
        rad = spec.radial(frequency=True)
        for j in range(1, 7):
            at_center = np.argmin(np.abs(rad - 2.0**j))
            assert bank.filters[j][at_center] == pytest.approx(1.0, abs=1e-12)

    def test_aliasing_guard(self):
        spec = GridSpec(1, 64.0, 2**12)  # nyquist = 32
        with pytest.raises(ValueError):
            build_filter_bank(spec, 5)  # 1.5 * 32 = 48 > 32

    def test_flat_interval_values(self):
        from fractions import Fraction as F

        assert shell_flat_interval(0) == (F(0), F(4, 3))
        assert shell_flat_interval(3) == (F(3, 4) * 8, F(4, 3) * 8)


class TestProjection:
    def test_shell_identity(self, shell_grid, shell_prof, shell_bank):
        for j in (0, 2, 5, 8):
            hj = make_shell_bump(shell_prof, j)
            pj = lp_project(hj, shell_bank, j)
            rel = np.abs(pj.values - hj.values).max() / np.abs(hj.values).max()
            assert rel < 1e-9

    def test_disjoint_shells_vanish(self, shell_grid, shell_prof, shell_bank):
        h3 = make_shell_bump(shell_prof, 3)
        for j in (1, 5, 7):
            pj = lp_project(h3, shell_bank, j)
            assert np.abs(pj.values).max() / np.abs(h3.values).max() < 1e-9

    def test_lowpass_captures_gaussian(self, norm_grid):
        # quadrature oracle: the deficit equals the spectral mass shaved by the cutoff
        g = unit_gaussian(norm_grid)
        bank = build_filter_bank(norm_grid, 6)
        p0 = lp_project(g, bank, 0)
        deficit = lebesgue_norm(
            type(g)(g.spec, p0.values - g.values), 2
        )
        G = fourier(g)
        predicted = np.sqrt(
            np.sum(np.abs(G.values * (1.0 - bank.filters[0])) ** 2) * G.spec.cell()
        )
        assert deficit == pytest.approx(predicted, rel=1e-6)
        assert deficit < 2e-3

    def test_idempotent_on_flat_zone(self, shell_grid, shell_prof, shell_bank):
        hj = make_shell_bump(shell_prof, 4)
        once = lp_project(hj, shell_bank, 4)
        twice = lp_project(once, shell_bank, 4)
        assert np.abs(twice.values - once.values).max() / np.abs(once.values).max() < 1e-9

    def test_stray_mass(self, shell_grid, shell_prof):
        small_bank = build_filter_bank(shell_grid, 2)
        h5 = make_shell_bump(shell_prof, 5)
        assert stray_mass_fraction(h5, small_bank) > 0.99
        assert stray_mass_fraction(make_shell_bump(shell_prof, 1), small_bank) == 0.0


class TestUniformPartition:
    def test_sums_to_one(self, small_grid, small_partition):
        total = sum(p.values for _, p in small_partition)
        assert np.abs(total - 1.0).max() <= 1e-9

    def test_support_radius(self, small_grid, small_partition):
        x = small_grid.axis()
        by_center = dict(small_partition)
        psi0 = by_center[0]
        assert np.abs(psi0.values[np.abs(x) >= PARTITION_SUPPORT_RADIUS]).max() == 0.0
        assert PARTITION_SUPPORT_RADIUS <= 2.0  # inside the unit-dimension ball bound

    def test_only_near_neighbors_at_origin(self, small_partition):
        by_center = dict(small_partition)
        mid_value = lambda k: by_center[k].values[by_center[k].spec.samples // 2]
        total = sum(mid_value(k) for k in (-1, 0, 1))
        assert total == pytest.approx(1.0, abs=1e-12)
        for k in (-3, -2, 2, 3):
            assert abs(mid_value(k)) == 0.0

    def test_needs_integer_extent(self):
        with pytest.raises(ValueError):
            uniform_partition(GridSpec(1, 12.5, 2**10))
