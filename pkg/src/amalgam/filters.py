"""Dyadic frequency decomposition and smooth uniform partitions of unity.

The base cutoff is exactly 1 for |xi| <= 4/3 and exactly 0 for |xi| >= 3/2.
Shell j >= 1 carries the difference of dilates, so it equals 1 exactly on
3/4 * 2^j <= |xi| <= 4/3 * 2^j and vanishes outside (2/3 * 2^j, 3/2 * 2^j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bumps import plateau
from .grid import GridFunction, GridSpec, fourier, inverse_fourier

__all__ = [
    "FilterBank",
    "build_filter_bank",
    "lp_project",
    "stray_mass_fraction",
    "shell_flat_interval",
    "uniform_partition",
    "PARTITION_SUPPORT_RADIUS",
]

#: The partition footprint is supported in [-r, r]^n with this radius.
PARTITION_SUPPORT_RADIUS = 1.25

_BASE_FLAT = 4.0 / 3.0
_BASE_SUPPORT = 1.5


def shell_flat_interval(j: int) -> tuple[Fraction, Fraction]:
    """Exact closed interval of |xi| on which shell j equals 1."""
    if j < 0:
        raise ValueError("shell index must be nonnegative")
    if j == 0:
        return (Fraction(0), Fraction(4, 3))
    scale = Fraction(2) ** j
    return (Fraction(3, 4) * scale, Fraction(4, 3) * scale)


@dataclass(frozen=True)
class FilterBank:
    """Real frequency-domain filters for shells 0..jmax on a fixed grid."""

    spec: GridSpec
    jmax: int
    filters: tuple = field(repr=False)

    def coverage_radius(self) -> float:
        """The telescoped sum is exactly 1 for |xi| up to this radius."""
        return float(Fraction(4, 3) * 2**self.jmax)


def build_filter_bank(spec: GridSpec, jmax: int) -> FilterBank:
    if jmax < 1:
        raise ValueError("jmax must be at least 1")
    top_support = _BASE_SUPPORT * 2.0**jmax
    if not top_support < spec.nyquist:
        raise ValueError(
            f"top shell (support radius {top_support}) would alias: grid resolves |xi| < {spec.nyquist}"
        )
    rad = spec.radial(frequency=True)

    def base(scale: float) -> np.ndarray:
        return plateau(rad / scale, _BASE_FLAT, _BASE_SUPPORT)

    filters = [base(1.0)]
    for j in range(1, jmax + 1):
        filters.append(base(2.0**j) - base(2.0 ** (j - 1)))
    return FilterBank(spec, jmax, tuple(filters))


def lp_project(f: GridFunction, bank: FilterBank, j: int) -> GridFunction:
    """Frequency projection onto shell j."""
    if not 0 <= j <= bank.jmax:
        raise ValueError(f"shell index {j} outside 0..{bank.jmax}")
    if f.spec != bank.spec:
        raise ValueError("grid mismatch between function and filter bank")
    F = fourier(f)
    return inverse_fourier(GridFunction(F.spec, F.values * bank.filters[j]))


def stray_mass_fraction(f: GridFunction, bank: FilterBank) -> float:
    """Fraction of squared spectral mass beyond the bank's exact coverage."""
    F = fourier(f)
    power = np.abs(F.values) ** 2
    total = power.sum()
    if total == 0.0:
        return 0.0
    outside = power[bank.spec.radial(frequency=True) > bank.coverage_radius()].sum()
    return float(outside / total)


def uniform_partition(spec: GridSpec) -> list[tuple[int, GridFunction]]:
    """Smooth unit-lattice partition of unity on the periodic grid (one dimension).

    Returns (integer center, cutoff) pairs whose cutoffs sum to exactly 1
    everywhere; each cutoff is supported in [k - r, k + r] with
    r = PARTITION_SUPPORT_RADIUS.
    """
    if spec.n != 1:
        raise NotImplementedError("uniform partitions are built on one-dimensional grids")
    extent = spec.extent
    if extent != int(extent) or int(extent) < 4:
        raise ValueError("partition needs an integer extent of at least 4")
    cells = int(extent)
    per_unit = spec.samples // cells
    if per_unit * cells != spec.samples:
        raise ValueError("samples must be divisible by the extent")

    footprint = plateau(np.abs(spec.axis()), 0.75, PARTITION_SUPPORT_RADIUS)
    weight_sum = np.zeros_like(footprint)
    for k in range(cells):
        weight_sum += np.roll(footprint, k * per_unit)
    psi = footprint / weight_sum

    out = []
    for k in range(-cells // 2, cells // 2):
        vals = np.roll(psi, k * per_unit).astype(np.complex128)
        out.append((k, GridFunction(spec, vals)))
    return out
