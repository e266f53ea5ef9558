"""Uniform grids on R^n (n in {1, 2}) and the centered discrete Fourier transform.

The transform follows the continuous convention with kernel exp(-2*pi*i*x.xi):
samples of a function on [-L/2, L/2)^n map to samples of its transform on
[-M/(2L), M/(2L))^n, scaled so that the result approximates the integral
transform (Riemann weight dx^n on the forward side, dxi^n on the inverse side).
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GridSpec",
    "GridFunction",
    "fourier",
    "inverse_fourier",
    "unit_gaussian",
    "zero_function",
    "translate",
    "dilate",
    "core_mass_fraction",
    "write_binary",
    "read_binary",
    "write_text",
    "read_text",
]

_MAGIC = b"AMGF"
_FORMAT_VERSION = 1


def _is_pow2(m: int) -> bool:
    return m > 0 and (m & (m - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Uniform sampling of [-extent/2, extent/2)^n with `samples` points per axis.

    `samples` is kept a power of two so FFT sizes, lattice strides, and
    integer-unit translations all divide evenly.
    """

    n: int
    extent: float
    samples: int

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError(f"dimension must be 1 or 2, got {self.n}")
        if not self.extent > 0:
            raise ValueError("extent must be positive")
        if not _is_pow2(self.samples) or self.samples < 8:
            raise ValueError("samples must be a power of two, at least 8")

    @property
    def dx(self) -> float:
        return self.extent / self.samples

    @property
    def dxi(self) -> float:
        return 1.0 / self.extent

    @property
    def nyquist(self) -> float:
        """Half-width of the frequency axis, M/(2L)."""
        return self.samples / (2.0 * self.extent)

    @property
    def shape(self) -> tuple:
        return (self.samples,) * self.n

    def axis(self) -> np.ndarray:
        return (np.arange(self.samples) - self.samples // 2) * self.dx

    def freq_axis(self) -> np.ndarray:
        return (np.arange(self.samples) - self.samples // 2) * self.dxi

    def radial(self, frequency: bool = False) -> np.ndarray:
        """|x| (or |xi|) on the full grid, shaped like a sample array."""
        ax = self.freq_axis() if frequency else self.axis()
        if self.n == 1:
            return np.abs(ax)
        return np.hypot(ax[:, None], ax[None, :])

    def freq_spec(self) -> "GridSpec":
        """The dual grid: spacing dxi, extent M/L.  Applying twice returns self."""
        return GridSpec(self.n, self.samples / self.extent, self.samples)

    def cell(self, frequency: bool = False) -> float:
        d = self.dxi if frequency else self.dx
        return d**self.n


@dataclass
class GridFunction:
    """Complex samples of a function on a GridSpec."""

    spec: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != self.spec.shape:
            raise ValueError(f"values shape {v.shape} does not match grid {self.spec.shape}")
        if v.dtype != np.complex128:
            v = v.astype(np.complex128)
        if not np.all(np.isfinite(v.view(np.float64))):
            raise ValueError("grid function values must be finite")
        self.values = v

    def copy(self) -> "GridFunction":
        return GridFunction(self.spec, self.values.copy())

    def __mul__(self, c) -> "GridFunction":
        return GridFunction(self.spec, self.values * c)

    __rmul__ = __mul__

    def __add__(self, other: "GridFunction") -> "GridFunction":
        if other.spec != self.spec:
            raise ValueError("grid mismatch")
        return GridFunction(self.spec, self.values + other.values)


def zero_function(spec: GridSpec) -> GridFunction:
    return GridFunction(spec, np.zeros(spec.shape, dtype=np.complex128))


def unit_gaussian(spec: GridSpec, center: float = 0.0, modulation: float = 0.0) -> GridFunction:
    """exp(-pi |x - center|^2), optionally modulated by exp(2*pi*i*modulation.x).

    Self-dual under the transform convention used here.
    """
    ax = spec.axis()
    if spec.n == 1:
        g = np.exp(-np.pi * (ax - center) ** 2).astype(np.complex128)
        if modulation:
            g = g * np.exp(2j * np.pi * modulation * ax)
    else:
        gx = np.exp(-np.pi * (ax - center) ** 2)
        g = np.asarray(gx[:, None] * gx[None, :], dtype=np.complex128)
        if modulation:
            ph = np.exp(2j * np.pi * modulation * ax)
            g = g * (ph[:, None] * ph[None, :])
    return GridFunction(spec, g)


def _axes(spec: GridSpec) -> tuple:
    return tuple(range(spec.n))


def fourier(f: GridFunction) -> GridFunction:
    """Samples of the continuous-convention transform on the dual grid."""
    spec = f.spec
    ax = _axes(spec)
    out = np.fft.fftshift(
        np.fft.fftn(np.fft.ifftshift(f.values, axes=ax), axes=ax), axes=ax
    ) * spec.cell()
    return GridFunction(spec.freq_spec(), out)


def inverse_fourier(F: GridFunction) -> GridFunction:
    """Inverse of `fourier`; input lives on the dual grid."""
    spec = F.spec
    ax = _axes(spec)
    scale = (spec.samples * spec.dx) ** spec.n  # 1 / (time-side dx^n)
    out = np.fft.fftshift(
        np.fft.ifftn(np.fft.ifftshift(F.values, axes=ax), axes=ax), axes=ax
    ) * scale
    return GridFunction(spec.freq_spec(), out)


def translate(f: GridFunction, shift: float, axis: int = 0) -> GridFunction:
    """Translate by a shift that must land on the sample grid exactly."""
    steps = shift / f.spec.dx
    k = int(round(steps))
    if abs(steps - k) > 1e-9:
        raise ValueError(f"shift {shift} is not an integer number of samples")
    return GridFunction(f.spec, np.roll(f.values, k, axis=axis))


def core_mass_fraction(f: GridFunction, half_width: float | None = None) -> float:
    """Fraction of squared mass inside [-w, w]^n (default w = extent/4).  1.0 for the zero function."""
    if half_width is None:
        half_width = f.spec.extent / 4.0
    power = np.abs(f.values) ** 2
    total = power.sum()
    if total == 0.0:
        return 1.0
    ax = np.abs(f.spec.axis())
    if f.spec.n == 1:
        inside = power[ax <= half_width].sum()
    else:
        mask = (ax[:, None] <= half_width) & (ax[None, :] <= half_width)
        inside = power[mask].sum()
    return float(inside / total)


def _support_window(values: np.ndarray, rel_tol: float = 1e-13) -> tuple[int, int] | None:
    """Smallest index window containing all entries above rel_tol * peak (1-D)."""
    mag = np.abs(values)
    peak = mag.max()
    if peak == 0.0:
        return None
    idx = np.nonzero(mag > rel_tol * peak)[0]
    return int(idx[0]), int(idx[-1])


def dilate(f: GridFunction, lam: float, oversample: int = 8) -> GridFunction:
    """Frequency-side dilation: the output transform is the input transform at xi/lam.

    Equivalently lam^n f(lam x).  For 1/lam a positive integer the resampling
    is an exact index map; otherwise (1-D only) the input spectrum is
    oversampled by zero-padding in time and interpolated with a cubic spline,
    with everything outside the dilated support window forced to exact zero.
    """
    spec = f.spec
    if not (4.0 * spec.dx <= lam <= spec.extent / 4.0):
        raise ValueError(
            f"dilation factor {lam} outside resolvable range [{4*spec.dx}, {spec.extent/4}]"
        )
    if lam == 1.0:
        return f.copy()
    M = spec.samples
    F = fourier(f)

    recip = 1.0 / lam
    if abs(recip - round(recip)) < 1e-12 and round(recip) >= 1:
        r = int(round(recip))
        out = np.zeros(spec.shape, dtype=np.complex128)
        half = M // 2
        idx = np.arange(M) - half
        src = idx * r + half
        ok = (src >= 0) & (src < M)
        if spec.n == 1:
            out[ok] = F.values[src[ok]]
        else:
            out[np.ix_(ok, ok)] = F.values[np.ix_(src[ok], src[ok])]
        return inverse_fourier(GridFunction(F.spec, out))

    if spec.n != 1:
        raise ValueError("non-integer-reciprocal dilation is supported in one dimension only")

    from scipy.interpolate import CubicSpline

    padded = np.zeros(M * oversample, dtype=np.complex128)
    lo = (M * oversample - M) // 2
    padded[lo : lo + M] = f.values
    fine_spec = GridSpec(1, spec.extent * oversample, M * oversample)
    fine_F = fourier(GridFunction(fine_spec, padded))
    fine_axis = fine_spec.freq_axis()
    window = _support_window(fine_F.values)
    out = np.zeros(M, dtype=np.complex128)
    if window is not None:
        lo_xi, hi_xi = fine_axis[window[0]], fine_axis[window[1]]
        spline = CubicSpline(fine_axis, fine_F.values)
        target = spec.freq_axis() / lam
        ok = (target >= lo_xi) & (target <= hi_xi)
        out[ok] = spline(target[ok])
    return inverse_fourier(GridFunction(spec.freq_spec(), out))


# ---------------------------------------------------------------------------
# Serialization.
#
# Binary record (little endian):
#   bytes 0-3   magic "AMGF"
#   byte  4     format version (1)
#   byte  5     dimension n
#   byte  6     dtype code: 0 = complex64, 1 = complex128
#   byte  7     reserved (0)
#   bytes 8-15  extent, float64
#   bytes 16-23 samples per axis, uint64
#   payload     values, C order, little endian
# ---------------------------------------------------------------------------

_HEADER = struct.Struct("<4sBBBBdQ")


def write_binary(f: GridFunction, path, dtype: str = "complex128") -> None:
    code = {"complex64": 0, "complex128": 1}[dtype]
    payload = f.values.astype("<c8" if code == 0 else "<c16").tobytes(order="C")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, _FORMAT_VERSION, f.spec.n, code, 0, f.spec.extent, f.spec.samples))
        fh.write(payload)


def read_binary(path) -> GridFunction:
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise ValueError(f"{path}: truncated header")
        magic, version, n, code, _, extent, samples = _HEADER.unpack(header)
        if magic != _MAGIC:
            raise ValueError(f"{path}: not a grid-function record")
        if version != _FORMAT_VERSION:
            raise ValueError(f"{path}: unsupported format version {version}")
        spec = GridSpec(n, extent, int(samples))
        dtype = "<c8" if code == 0 else "<c16"
        raw = fh.read()
    values = np.frombuffer(raw, dtype=dtype).reshape(spec.shape).astype(np.complex128)
    return GridFunction(spec, values)


def write_text(f: GridFunction, path) -> None:
    """Plain-text debug format: header line, then one `index re im` line per sample."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"amalgam-grid v1 n={f.spec.n} extent={f.spec.extent!r} samples={f.spec.samples}\n")
        flat = f.values.ravel(order="C")
        for i, v in enumerate(flat):
            fh.write(f"{i} {float(v.real)!r} {float(v.imag)!r}\n")


def read_text(path) -> GridFunction:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if not header or header[0] != "amalgam-grid":
            raise ValueError(f"{path}: not a grid-function text record")
        fields = dict(part.split("=", 1) for part in header[2:])
        spec = GridSpec(int(fields["n"]), float(fields["extent"]), int(fields["samples"]))
        flat = np.zeros(spec.samples**spec.n, dtype=np.complex128)
        for line in fh:
            i, re, im = line.split()
            flat[int(i)] = complex(float(re), float(im))
    return GridFunction(spec, flat.reshape(spec.shape))
