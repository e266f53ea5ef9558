import numpy as np
import pytest

from amalgam.filters import build_filter_bank, uniform_partition
from amalgam.grid import GridSpec, unit_gaussian
from amalgam.witnesses import lowpass_profile, narrowband_profile, shell_profile


@pytest.fixture(scope="session")
def norm_grid():
    """Default grid for cheap norm evaluations (band-limited inputs up to |xi| ~ 16)."""
    return GridSpec(1, 64.0, 2**14)


@pytest.fixture(scope="session")
def shell_grid():
    """Wide, finely sampled grid for dyadic-shell witnesses up to j = 8."""
    return GridSpec(1, 128.0, 2**17)


@pytest.fixture(scope="session")
def wide_grid():
    """Very wide, coarse grid for low-frequency dilation families."""
    return GridSpec(1, 2048.0, 2**14)


@pytest.fixture(scope="session")
def small_grid():
    return GridSpec(1, 32.0, 2**12)


@pytest.fixture(scope="session")
def shell_prof(shell_grid):
    return shell_profile(shell_grid)


@pytest.fixture(scope="session")
def lowpass_prof(wide_grid):
    return lowpass_profile(wide_grid)


@pytest.fixture(scope="session")
def shell_bank(shell_grid):
    return build_filter_bank(shell_grid, 8)


@pytest.fixture(scope="session")
def small_bank(small_grid):
    return build_filter_bank(small_grid, 4)


@pytest.fixture(scope="session")
def small_partition(small_grid):
    return uniform_partition(small_grid)


@pytest.fixture(scope="session")
def gaussian(norm_grid):
    return unit_gaussian(norm_grid)
