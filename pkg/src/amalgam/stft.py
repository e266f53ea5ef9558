"""Windows, time-frequency lattices, and the sampled short-time Fourier transform.

The transform of f against window w at lattice node (x_m, xi_l) is the
centered DFT of f(.) * conj(w(. - x_m)) scaled by dx^n, i.e. a Riemann sum for

    integral f(y) conj(w(y - x_m)) exp(-2*pi*i*y.xi_l) dy.

Time nodes step through the full periodic extent with a stride that divides
the grid; frequency nodes are the full DFT axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Union

import numpy as np

from .bumps import plateau
from .grid import GridFunction, GridSpec, inverse_fourier

__all__ = [
    "WindowKind",
    "COMPACT_BUMP_RADIUS",
    "window_function",
    "window_freq_radius",
    "TfLattice",
    "TfMatrix",
    "default_lattice",
    "stft",
    "stft_blocks",
    "MAX_TF_ENTRIES",
]

#: Frequency support radius of the compactly supported window (exact rational,
#: small against the unit lattice spacing so shell and lattice supports stay
#: disjoint after windowing).
COMPACT_BUMP_RADIUS = Fraction(1, 16)
_COMPACT_BUMP_FLAT = Fraction(1, 128)

#: Refuse to materialize time-frequency matrices beyond this many entries;
#: norm evaluators stream row blocks instead.
MAX_TF_ENTRIES = 1 << 25


class WindowKind(Enum):
    GAUSSIAN = "gaussian"
    COMPACT_BUMP = "compact_bump"


def window_function(spec: GridSpec, kind: WindowKind) -> GridFunction:
    """Sample the window on the grid.

    GAUSSIAN is exp(-pi |x|^2).  COMPACT_BUMP has compactly supported
    transform (radius COMPACT_BUMP_RADIUS), hence slow spatial decay; use it
    when an experiment relies on exact frequency-support statements.
    """
    if kind == WindowKind.GAUSSIAN:
        ax = spec.axis()
        if spec.n == 1:
            vals = np.exp(-np.pi * ax**2).astype(np.complex128)
        else:
            g = np.exp(-np.pi * ax**2)
            vals = np.asarray(g[:, None] * g[None, :], dtype=np.complex128)
        return GridFunction(spec, vals)
    if kind == WindowKind.COMPACT_BUMP:
        rad = spec.radial(frequency=True)
        prof = plateau(rad, float(_COMPACT_BUMP_FLAT), float(COMPACT_BUMP_RADIUS))
        return inverse_fourier(GridFunction(spec.freq_spec(), prof.astype(np.complex128)))
    raise ValueError(f"unknown window kind {kind!r}")


def window_freq_radius(kind: WindowKind, spec: GridSpec) -> float:
    """Effective frequency radius: exact support for the bump, 3-sigma-ish decay for the Gaussian."""
    if kind == WindowKind.COMPACT_BUMP:
        return float(COMPACT_BUMP_RADIUS)
    return 3.0


@dataclass(frozen=True)
class TfLattice:
    """Sampling lattice: time stride in samples (per axis), all DFT frequencies."""

    spec: GridSpec
    time_stride: int

    def __post_init__(self):
        if self.time_stride < 1 or self.spec.samples % self.time_stride != 0:
            raise ValueError(
                f"time stride {self.time_stride} does not divide the grid ({self.spec.samples} samples)"
            )

    @property
    def a(self) -> float:
        """Physical time step between lattice rows (per axis)."""
        return self.time_stride * self.spec.dx

    @property
    def b(self) -> float:
        """Physical frequency step, equal to the grid's dxi."""
        return self.spec.dxi

    @property
    def times_per_axis(self) -> int:
        return self.spec.samples // self.time_stride

    @property
    def time_count(self) -> int:
        return self.times_per_axis**self.spec.n

    @property
    def freq_count(self) -> int:
        return self.spec.samples**self.spec.n

    def time_cell(self) -> float:
        return self.a**self.spec.n

    def freq_cell(self) -> float:
        return self.b**self.spec.n

    def freq_weights_abs(self) -> np.ndarray:
        """|xi| for every lattice frequency, flattened in C order."""
        return self.spec.radial(frequency=True).ravel()


def default_lattice(spec: GridSpec, spacing: float = 0.25) -> TfLattice:
    """Lattice whose time step is the power of two nearest the requested spacing."""
    target = max(1.0, spacing / spec.dx)
    stride = 1 << int(round(math.log2(target)))
    stride = min(stride, spec.samples)
    return TfLattice(spec, stride)


@dataclass
class TfMatrix:
    """Sampled short-time Fourier transform on a TfLattice: rows = time, cols = frequency."""

    lattice: TfLattice
    window_id: WindowKind
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        expected = (self.lattice.time_count, self.lattice.freq_count)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape}, expected {expected}")


WindowLike = Union[WindowKind, GridFunction]


def _resolve_window(spec: GridSpec, window: WindowLike) -> tuple[GridFunction, WindowKind]:
    if isinstance(window, GridFunction):
        if window.spec != spec:
            raise ValueError("window grid does not match signal grid")
        return window, WindowKind.GAUSSIAN
    return window_function(spec, window), window


def _check_window_fits(win: GridFunction) -> None:
    from .grid import core_mass_fraction

    outside = 1.0 - core_mass_fraction(win, half_width=win.spec.extent / 2.0 - win.spec.dx)
    if outside > 1e-5:
        raise ValueError(
            f"window does not fit the grid: relative mass {outside:.2e} outside the domain"
        )


def stft_blocks(
    f: GridFunction,
    window: WindowLike,
    lattice: TfLattice,
    rows_per_block: int = 32,
) -> Iterator[np.ndarray]:
    """Yield consecutive row blocks of the transform matrix (time-major, C order)."""
    spec = f.spec
    if lattice.spec != spec:
        raise ValueError("lattice grid does not match signal grid")
    win, _ = _resolve_window(spec, window)
    _check_window_fits(win)
    M = spec.samples
    half = M // 2
    base = np.conj(win.values)
    st = lattice.time_stride
    scale = spec.cell()

    if spec.n == 1:
        positions = np.arange(lattice.times_per_axis) * st
        idx = np.arange(M)
        for m0 in range(0, len(positions), rows_per_block):
            pos = positions[m0 : m0 + rows_per_block]
            gather = (idx[None, :] - pos[:, None] + half) % M
            G = f.values[None, :] * base[gather]
            block = np.fft.fftshift(
                np.fft.fft(np.fft.ifftshift(G, axes=1), axis=1), axes=1
            ) * scale
            yield block
    else:
        per = lattice.times_per_axis
        rows = []
        for mx in range(per):
            for my in range(per):
                w = np.roll(np.roll(base, mx * st - half, axis=0), my * st - half, axis=1)
                G = f.values * w
                V = np.fft.fftshift(np.fft.fft2(np.fft.ifftshift(G))) * scale
                rows.append(V.ravel())
                if len(rows) == rows_per_block:
                    yield np.vstack(rows)
                    rows = []
        if rows:
            yield np.vstack(rows)


def stft(f: GridFunction, window: WindowLike, lattice: TfLattice) -> TfMatrix:
    """Materialize the full transform matrix (refuses unreasonably large ones)."""
    if lattice.time_count * lattice.freq_count > MAX_TF_ENTRIES:
        raise ValueError(
            "time-frequency matrix too large to materialize; reduce the grid or stream stft_blocks"
        )
    _, kind = _resolve_window(f.spec, window)
    blocks = list(stft_blocks(f, window, lattice))
    values = np.vstack(blocks) if blocks else np.zeros((0, lattice.freq_count), np.complex128)
    return TfMatrix(lattice, kind, values)
