"""Quadrature evaluators for the (quasi-)norms used throughout the package.

All evaluators accept exponents as Exponent, Fraction, int, float, or the
string "inf"; infinite exponents turn integrals into maxima over samples
(no cell weights).  Reductions use fixed-order pairwise/blocked summation so
repeated runs agree bitwise.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from . import kernels
from .exponents import Exponent, Family, SpaceSpec, as_rational
from .filters import FilterBank, lp_project, stray_mass_fraction, build_filter_bank
from .grid import GridFunction, GridSpec, core_mass_fraction, fourier, inverse_fourier
from .stft import (
    MAX_TF_ENTRIES,
    TfLattice,
    TfMatrix,
    WindowKind,
    default_lattice,
    stft,
    stft_blocks,
)

__all__ = [
    "NormDiagnostics",
    "MixedOrder",
    "MixedNormSpec",
    "SeqKind",
    "WeightedSeq",
    "exponent_value",
    "lebesgue_norm",
    "mixed_norm",
    "wiener_norm",
    "modulation_norm",
    "wiener_norms_multi",
    "besov_norm",
    "triebel_norm",
    "local_hardy_norm",
    "fourier_series_norm",
    "seq_norm",
    "localized_norm",
    "space_norm",
]

INF = math.inf

ExponentInput = Union[Exponent, Fraction, int, float, str]


def exponent_value(p: ExponentInput, what: str = "exponent") -> float:
    """Exponent as a float, with math.inf for the infinite case."""
    if isinstance(p, Exponent):
        return INF if p.is_inf else float(p.p)
    if isinstance(p, str):
        return INF if p.strip().lower() in {"inf", "infinity", "oo"} else float(Fraction(p))
    if isinstance(p, Fraction):
        return float(p)
    value = float(p)
    if not value > 0:
        raise ValueError(f"{what} must be positive, got {p!r}")
    return value


def _smoothness_value(s) -> float:
    if isinstance(s, (Fraction, int)):
        return float(s)
    if isinstance(s, str):
        return float(Fraction(s))
    return float(s)


def _bracket_weight(radii: np.ndarray, s: float) -> np.ndarray:
    """(1 + r^2)^(s/2)."""
    if s == 0.0:
        return np.ones_like(radii)
    return (1.0 + radii**2) ** (0.5 * s)


def _power_reduce(vals: np.ndarray, p: float, cell: float) -> float:
    """(sum vals^p * cell)^(1/p), max for p = inf; zero-safe."""
    if math.isinf(p):
        return float(vals.max()) if vals.size else 0.0
    total = float(np.sum(vals**p)) * cell
    return total ** (1.0 / p) if total > 0.0 else 0.0


@dataclass
class NormDiagnostics:
    """Quality record attached to a norm evaluation on request."""

    core_mass_outside: float = 0.0
    spectral_leak: float = 0.0
    notes: tuple = ()

    def ok(self, mass_tol: float = 1e-6, leak_tol: float = 1e-3) -> bool:
        return self.core_mass_outside <= mass_tol and self.spectral_leak <= leak_tol


# ---------------------------------------------------------------------------
# Weighted Lebesgue
# ---------------------------------------------------------------------------


def lebesgue_norm(f: GridFunction, p: ExponentInput, s=0, diagnostics: bool = False):
    """Riemann-sum norm with polynomial weight <x>^s."""
    pv = exponent_value(p)
    sv = _smoothness_value(s)
    mag = np.abs(f.values).ravel()
    w = _bracket_weight(f.spec.radial().ravel(), sv)
    value = _power_reduce(mag * w, pv, f.spec.cell())
    if not diagnostics:
        return value
    diag = NormDiagnostics(core_mass_outside=1.0 - core_mass_fraction(f))
    return value, diag


# ---------------------------------------------------------------------------
# Mixed norms on sampled short-time transforms
# ---------------------------------------------------------------------------


class MixedOrder(Enum):
    #: frequency reduced first, then time: local-regularity-first order
    WIENER = "freq_inner_time_outer"
    #: time reduced first, then frequency
    MODULATION = "time_inner_freq_outer"


@dataclass(frozen=True)
class MixedNormSpec:
    inner: ExponentInput
    outer: ExponentInput
    weight_s: Fraction = Fraction(0)
    order: MixedOrder = MixedOrder.WIENER


def _freq_weights(lattice: TfLattice, s: float) -> np.ndarray:
    return _bracket_weight(lattice.freq_weights_abs(), s)


def mixed_norm(V: TfMatrix, spec: MixedNormSpec) -> float:
    """Reduce the frequency axis with weight <xi>^s and the time axis, in the given order."""
    lattice = V.lattice
    s = _smoothness_value(spec.weight_s)
    w = _freq_weights(lattice, s)
    mag = np.abs(V.values)
    if spec.order == MixedOrder.WIENER:
        q = exponent_value(spec.inner, "inner exponent")
        p = exponent_value(spec.outer, "outer exponent")
        inner = kernels.row_weighted_lq(mag, w, q, lattice.freq_cell())
        return _power_reduce(inner, p, lattice.time_cell())
    p = exponent_value(spec.inner, "inner exponent")
    q = exponent_value(spec.outer, "outer exponent")
    if math.isinf(p):
        col = mag.max(axis=0)
    else:
        col = (np.sum(mag**p, axis=0) * lattice.time_cell()) ** (1.0 / p) if mag.size else np.zeros(0)
    out = kernels.row_weighted_lq(col[None, :], w, q, lattice.freq_cell())
    return float(out[0])


def _resolve_lattice(f: GridFunction, lattice: Optional[TfLattice], spacing: float) -> TfLattice:
    return lattice if lattice is not None else default_lattice(f.spec, spacing)


def wiener_norms_multi(
    f: GridFunction,
    triples: list,
    window: WindowKind = WindowKind.GAUSSIAN,
    lattice: Optional[TfLattice] = None,
    spacing: float = 0.25,
) -> list:
    """Evaluate several (p, q, s) local-regularity-first norms in one transform pass."""
    lattice = _resolve_lattice(f, lattice, spacing)
    parsed = [
        (exponent_value(p), exponent_value(q), _smoothness_value(s)) for (p, q, s) in triples
    ]
    weights = [_freq_weights(lattice, s) for (_, _, s) in parsed]
    inners = [[] for _ in parsed]
    for block in stft_blocks(f, window, lattice):
        mag = np.abs(block)
        for i, (pv, qv, _) in enumerate(parsed):
            inners[i].append(kernels.row_weighted_lq(mag, weights[i], qv, lattice.freq_cell()))
    out = []
    for i, (pv, _, _) in enumerate(parsed):
        vals = np.concatenate(inners[i]) if inners[i] else np.zeros(0)
        out.append(_power_reduce(vals, pv, lattice.time_cell()))
    return out


def wiener_norm(
    f: GridFunction,
    p: ExponentInput,
    q: ExponentInput,
    s=0,
    window: WindowKind = WindowKind.GAUSSIAN,
    lattice: Optional[TfLattice] = None,
    spacing: float = 0.25,
    diagnostics: bool = False,
):
    """Mixed norm with the frequency axis reduced first (weight <xi>^s), then time."""
    value = wiener_norms_multi(f, [(p, q, s)], window=window, lattice=lattice, spacing=spacing)[0]
    if not diagnostics:
        return value
    return value, NormDiagnostics(core_mass_outside=1.0 - core_mass_fraction(f))


def modulation_norm(
    f: GridFunction,
    p: ExponentInput,
    q: ExponentInput,
    s=0,
    window: WindowKind = WindowKind.GAUSSIAN,
    lattice: Optional[TfLattice] = None,
    spacing: float = 0.25,
    diagnostics: bool = False,
):
    """Mixed norm with the time axis reduced first, then frequency (weight <xi>^s)."""
    lattice = _resolve_lattice(f, lattice, spacing)
    pv = exponent_value(p)
    qv = exponent_value(q)
    sv = _smoothness_value(s)
    w = _freq_weights(lattice, sv)
    acc = None
    for block in stft_blocks(f, window, lattice):
        mag = np.abs(block)
        part = mag.max(axis=0) if math.isinf(pv) else np.sum(mag**pv, axis=0)
        acc = part if acc is None else (np.maximum(acc, part) if math.isinf(pv) else acc + part)
    if acc is None:
        return 0.0
    col = acc if math.isinf(pv) else (acc * lattice.time_cell()) ** (1.0 / pv)
    value = float(kernels.row_weighted_lq(col[None, :], w, qv, lattice.freq_cell())[0])
    if not diagnostics:
        return value
    return value, NormDiagnostics(core_mass_outside=1.0 - core_mass_fraction(f))


# ---------------------------------------------------------------------------
# Dyadic-decomposition norms
# ---------------------------------------------------------------------------


def _shell_pieces(f: GridFunction, bank: FilterBank):
    F = fourier(f)
    for filt in bank.filters:
        yield inverse_fourier(GridFunction(F.spec, F.values * filt))


def _check_band(f: GridFunction, bank: FilterBank, warn: bool) -> float:
    leak = stray_mass_fraction(f, bank)
    if warn and leak >= 1e-3:
        warnings.warn(
            f"input has {leak:.2e} of spectral mass beyond the filter bank coverage",
            stacklevel=3,
        )
    return leak


def besov_norm(
    f: GridFunction,
    bank: FilterBank,
    p: ExponentInput,
    q: ExponentInput,
    s=0,
    warn: bool = True,
    diagnostics: bool = False,
):
    """l_q aggregate over shells of 2^(j s) * L_p shell norms."""
    leak = _check_band(f, bank, warn)
    pv = exponent_value(p)
    qv = exponent_value(q)
    sv = _smoothness_value(s)
    block_norms = np.array(
        [lebesgue_norm(piece, pv) for piece in _shell_pieces(f, bank)]
    )
    weights = 2.0 ** (sv * np.arange(bank.jmax + 1))
    value = _power_reduce(block_norms * weights, qv, 1.0)
    if not diagnostics:
        return value
    return value, NormDiagnostics(
        core_mass_outside=1.0 - core_mass_fraction(f), spectral_leak=leak
    )


def triebel_norm(
    f: GridFunction,
    bank: FilterBank,
    p: ExponentInput,
    q: ExponentInput,
    s=0,
    warn: bool = True,
    diagnostics: bool = False,
):
    """L_p norm of the pointwise l_q aggregate over shells (p < inf)."""
    pv = exponent_value(p)
    if math.isinf(pv):
        raise ValueError("the pointwise-aggregate norm requires p < inf")
    qv = exponent_value(q)
    sv = _smoothness_value(s)
    leak = _check_band(f, bank, warn)
    acc = None
    for j, piece in enumerate(_shell_pieces(f, bank)):
        term = (2.0 ** (sv * j)) * np.abs(piece.values)
        if math.isinf(qv):
            acc = term if acc is None else np.maximum(acc, term)
        else:
            term = term**qv
            acc = term if acc is None else acc + term
    if acc is None:
        return 0.0
    pointwise = acc if math.isinf(qv) else acc ** (1.0 / qv)
    value = _power_reduce(pointwise.ravel(), pv, f.spec.cell())
    if not diagnostics:
        return value
    return value, NormDiagnostics(
        core_mass_outside=1.0 - core_mass_fraction(f), spectral_leak=leak
    )


def local_hardy_norm(f: GridFunction, p: ExponentInput, m_max: int = 10):
    """L_p norm of the maximal mollification over dyadic scales t = 1, 1/2, ..., 2^-m_max.

    The mollifier is the unit-mass Gaussian, applied as a frequency multiplier.
    """
    pv = exponent_value(p)
    if math.isinf(pv):
        raise ValueError("the maximal-function norm requires p < inf")
    F = fourier(f)
    rad2 = F.spec.radial() ** 2  # |xi|^2 on the frequency grid
    best = None
    for m in range(m_max + 1):
        t = 2.0**-m
        smoothed = inverse_fourier(GridFunction(F.spec, F.values * np.exp(-np.pi * t * t * rad2)))
        mag = np.abs(smoothed.values)
        best = mag if best is None else np.maximum(best, mag)
    return _power_reduce(best.ravel(), pv, f.spec.cell())


# ---------------------------------------------------------------------------
# Sequence spaces and Fourier series
# ---------------------------------------------------------------------------


class SeqKind(Enum):
    UNIFORM = "uniform"  # integer-lattice indices, weight <k>^s
    DYADIC = "dyadic"    # nonnegative indices, weight 2^(j s)


@dataclass
class WeightedSeq:
    """Finitely supported coefficient sequence."""

    kind: SeqKind
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        for key in self.entries:
            if self.kind == SeqKind.DYADIC:
                if not (isinstance(key, int) and key >= 0):
                    raise ValueError("dyadic sequences are indexed by nonnegative integers")
            else:
                if not (isinstance(key, int) or (isinstance(key, tuple) and all(isinstance(c, int) for c in key))):
                    raise ValueError("uniform sequences are indexed by integers or integer tuples")

    def max_abs_index(self) -> int:
        best = 0
        for key in self.entries:
            r = abs(key) if isinstance(key, int) else max(abs(c) for c in key)
            best = max(best, r)
        return best

    def items(self):
        return sorted(self.entries.items(), key=lambda kv: (str(type(kv[0])), kv[0]))

    def scaled(self, c) -> "WeightedSeq":
        return WeightedSeq(self.kind, {k: c * v for k, v in self.entries.items()})


def _index_radius(key) -> float:
    if isinstance(key, int):
        return abs(key)
    return math.hypot(*key)


def seq_norm(a: WeightedSeq, q: ExponentInput, s=0) -> float:
    """Weighted l_q norm: weight <k>^s for uniform, 2^(j s) for dyadic sequences."""
    qv = exponent_value(q)
    sv = _smoothness_value(s)
    terms = []
    for key, val in a.items():
        if a.kind == SeqKind.UNIFORM:
            w = (1.0 + _index_radius(key) ** 2) ** (0.5 * sv)
        else:
            w = 2.0 ** (sv * key)
        terms.append(abs(val) * w)
    if not terms:
        return 0.0
    arr = np.array(terms)
    return _power_reduce(arr, qv, 1.0)


def fourier_series_norm(a: WeightedSeq, p: ExponentInput, oversample: int = 8) -> float:
    """Periodic L_p norm of the trigonometric polynomial with coefficients a.

    The polynomial is evaluated on a periodic grid at least `oversample` times
    finer than the largest frequency.
    """
    if a.kind != SeqKind.UNIFORM:
        raise ValueError("Fourier series need a uniform (integer-lattice) sequence")
    pv = exponent_value(p)
    kmax = a.max_abs_index()
    size = 64
    while size < oversample * max(kmax, 1) + 1:
        size *= 2
    first = next(iter(a.entries), 0)
    ndim = 1 if isinstance(first, int) else len(first)
    shape = (size,) * ndim
    A = np.zeros(shape, dtype=np.complex128)
    for key, val in a.entries.items():
        idx = (key % size,) if isinstance(key, int) else tuple(c % size for c in key)
        A[idx] += val
    values = np.fft.ifftn(A) * (size**ndim)
    return _power_reduce(np.abs(values).ravel(), pv, (1.0 / size) ** ndim)


# ---------------------------------------------------------------------------
# Localization
# ---------------------------------------------------------------------------


def localized_norm(
    f: GridFunction,
    partition: list,
    inner_space: SpaceSpec,
    p_outer: ExponentInput,
    window: WindowKind = WindowKind.GAUSSIAN,
    bank: Optional[FilterBank] = None,
    spacing: float = 0.25,
    skip_rel: float = 1e-12,
) -> float:
    """l_{p_outer} aggregate of inner-space norms of the partition pieces.

    Pieces whose samples are below skip_rel * peak are skipped; with the
    compactly supported partition cutoffs this only drops exact-zero products
    up to rounding.
    """
    if inner_space.family not in (Family.WIENER, Family.TRIEBEL):
        raise ValueError("localized evaluation supports the W and F inner families")
    pv = exponent_value(p_outer)
    peak = float(np.abs(f.values).max())
    pieces = []
    for _, cutoff in partition:
        vals = cutoff.values * f.values
        if peak > 0.0 and float(np.abs(vals).max()) <= skip_rel * peak:
            continue
        piece = GridFunction(f.spec, vals)
        if inner_space.family == Family.WIENER:
            pieces.append(
                wiener_norm(piece, inner_space.p, inner_space.q, inner_space.s, window=window, spacing=spacing)
            )
        else:
            if bank is None:
                raise ValueError("localized pointwise-aggregate norm needs a filter bank")
            pieces.append(triebel_norm(piece, bank, inner_space.p, inner_space.q, inner_space.s, warn=False))
    if not pieces:
        return 0.0
    return _power_reduce(np.array(pieces), pv, 1.0)


# ---------------------------------------------------------------------------
# Dispatcher used by probes and the command line
# ---------------------------------------------------------------------------


def space_norm(
    f: GridFunction,
    space: SpaceSpec,
    window: WindowKind = WindowKind.GAUSSIAN,
    bank: Optional[FilterBank] = None,
    lattice: Optional[TfLattice] = None,
    spacing: float = 0.25,
    jmax: Optional[int] = None,
) -> float:
    """Evaluate the norm described by a SpaceSpec on a grid function."""
    fam = space.family
    if fam == Family.LEBESGUE:
        return lebesgue_norm(f, space.p, space.s)
    if fam == Family.WIENER:
        return wiener_norm(f, space.p, space.q, space.s, window=window, lattice=lattice, spacing=spacing)
    if fam == Family.MODULATION:
        return modulation_norm(f, space.p, space.q, space.s, window=window, lattice=lattice, spacing=spacing)
    if fam in (Family.BESOV, Family.TRIEBEL):
        if bank is None:
            if jmax is None:
                top = f.spec.nyquist / 1.5
                jmax = max(1, int(math.floor(math.log2(top))) - 0)
                while 1.5 * 2**jmax >= f.spec.nyquist:
                    jmax -= 1
            bank = build_filter_bank(f.spec, jmax)
        if fam == Family.BESOV:
            return besov_norm(f, bank, space.p, space.q, space.s, warn=False)
        return triebel_norm(f, bank, space.p, space.q, space.s, warn=False)
    if fam == Family.LOCAL_HARDY:
        return local_hardy_norm(f, space.p)
    raise ValueError(f"no grid-function norm for family {fam}")
