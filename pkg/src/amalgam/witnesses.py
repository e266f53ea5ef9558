"""Generators for the extremal families the sharpness experiments probe with.

Profiles are defined by exact radial frequency formulas (the same smooth glue
as the filter bank), so dyadic rescalings are evaluated analytically on the
frequency grid instead of resampled: support statements like "the shell
projection reproduces the shell bump" then hold to rounding.

Every generated witness must keep all but 1e-6 of its squared mass inside
the central half of the domain; generators raise when a configuration
violates that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .bumps import annulus, plateau
from .exponents import Exponent, as_rational
from .grid import GridFunction, GridSpec, core_mass_fraction, inverse_fourier
from .norms import SeqKind, WeightedSeq, exponent_value
from .stft import COMPACT_BUMP_RADIUS

__all__ = [
    "RadialProfile",
    "lowpass_profile",
    "shell_profile",
    "narrowband_profile",
    "NARROWBAND_RADIUS",
    "check_core_mass",
    "make_scaled_lowpass",
    "make_shell_bump",
    "make_shell_train",
    "gamma_shell_indices",
    "make_lattice_train",
    "SignVector",
    "rademacher_signs",
    "make_signed_lattice_sum",
    "AtomKind",
    "Atom",
    "make_atom",
    "make_truncated_seq",
]

#: Frequency support radius of the lattice profile (small against unit spacing).
NARROWBAND_RADIUS = Fraction(1, 16)


@dataclass(frozen=True)
class RadialProfile:
    """A grid function together with the exact radial law of its transform."""

    spec: GridSpec
    grid: GridFunction = field(repr=False)
    freq_radial: Callable = field(repr=False)
    support: tuple = (Fraction(0), Fraction(1))  # exact radial support of the transform

    def rescaled_transform(self, scale: float) -> np.ndarray:
        """Samples of the transform with frequencies divided by `scale`."""
        return self.freq_radial(self.spec.radial(frequency=True) / scale)


def _profile_from_radial(spec: GridSpec, law: Callable, support) -> RadialProfile:
    vals = law(spec.radial(frequency=True)).astype(np.complex128)
    grid = inverse_fourier(GridFunction(spec.freq_spec(), vals))
    return RadialProfile(spec, grid, law, support)


def lowpass_profile(spec: GridSpec) -> RadialProfile:
    """Transform equal to 1 for |xi| <= 1/2 and supported in |xi| < 1."""
    return _profile_from_radial(
        spec, lambda r: plateau(r, 0.5, 1.0), (Fraction(0), Fraction(1))
    )


def shell_profile(spec: GridSpec) -> RadialProfile:
    """Transform supported in 3/4 <= |xi| <= 4/3, equal to 1 on 7/8 <= |xi| <= 8/7."""
    return _profile_from_radial(
        spec,
        lambda r: annulus(r, 0.75, 7.0 / 8.0, 8.0 / 7.0, 4.0 / 3.0),
        (Fraction(3, 4), Fraction(4, 3)),
    )


def narrowband_profile(spec: GridSpec, radius: Fraction = NARROWBAND_RADIUS) -> RadialProfile:
    """Transform supported in a ball of the given (small) radius."""
    return _profile_from_radial(
        spec,
        lambda r: plateau(r, float(radius) / 4.0, float(radius)),
        (Fraction(0), Fraction(radius)),
    )


def check_core_mass(f: GridFunction, tol: float = 1e-6, label: str = "witness") -> GridFunction:
    outside = 1.0 - core_mass_fraction(f)
    if outside > tol:
        raise ValueError(
            f"{label} leaves {outside:.2e} of its squared mass outside the central half-domain; "
            "enlarge the grid extent"
        )
    return f


def make_scaled_lowpass(profile: RadialProfile, eps: float) -> GridFunction:
    """Witness with transform equal to the profile's at xi/eps (narrow band, wide in space)."""
    spec = profile.spec
    # the shrunk band must span a few frequency cells and stay below Nyquist
    if not (4.0 * spec.dxi <= eps * float(profile.support[1]) <= spec.nyquist / 2.0):
        raise ValueError(f"scale {eps} outside the resolvable range of the grid")
    vals = profile.rescaled_transform(eps).astype(np.complex128)
    out = inverse_fourier(GridFunction(spec.freq_spec(), vals))
    return check_core_mass(out, label=f"scaled lowpass (eps={eps})")


def make_shell_bump(profile: RadialProfile, j: int) -> GridFunction:
    """Witness with transform supported on the dyadic shell of scale 2^j."""
    if j < 0:
        raise ValueError("shell index must be nonnegative")
    spec = profile.spec
    top = float(profile.support[1]) * 2.0**j
    if top >= spec.nyquist:
        raise ValueError(f"shell {j} (support to |xi|={top}) would alias on this grid")
    vals = profile.rescaled_transform(2.0**j).astype(np.complex128)
    out = inverse_fourier(GridFunction(spec.freq_spec(), vals))
    return check_core_mass(out, label=f"shell bump (j={j})")


def _integer_shift_samples(spec: GridSpec, shift: float) -> int:
    steps = shift / spec.dx
    k = int(round(steps))
    if abs(steps - k) > 1e-9:
        raise ValueError(f"translation {shift} is not an integer number of grid samples")
    return k


def make_shell_train(
    coeffs: WeightedSeq,
    separation: float,
    profile: RadialProfile,
    recenter: bool = True,
) -> GridFunction:
    """Sum over j of coeffs[j] times the shell-j bump translated by j*separation.

    Translations are recentered so the train sits symmetrically in the domain.
    """
    if coeffs.kind != SeqKind.DYADIC:
        raise ValueError("shell trains take a dyadic coefficient sequence")
    spec = profile.spec
    support = [j for j, v in coeffs.entries.items() if v != 0]
    if not support:
        return GridFunction(spec, np.zeros(spec.shape, np.complex128))
    center = separation * (max(support) + min(support)) / 2.0 if recenter else 0.0
    total = np.zeros(spec.shape, dtype=np.complex128)
    for j, amp in sorted(coeffs.entries.items()):
        if amp == 0:
            continue
        bump = make_shell_bump(profile, j)
        shift = _integer_shift_samples(spec, j * separation - center)
        total += complex(amp) * np.roll(bump.values, shift)
    return check_core_mass(GridFunction(spec, total), label="shell train")


def gamma_shell_indices(j: int, radius: Fraction = NARROWBAND_RADIUS) -> list:
    """Integer frequencies k whose radius-`radius` band sits strictly inside the
    exact-1 zone of shell j (one dimension).  Exact rational arithmetic."""
    from .filters import shell_flat_interval

    lo, hi = shell_flat_interval(j)
    out = []
    bound = int(hi) + 2
    for k in range(-bound, bound + 1):
        ak = Fraction(abs(k))
        if j == 0:
            if ak + radius < hi:
                out.append(k)
        else:
            if ak - radius > lo and ak + radius < hi:
                out.append(k)
    return out


def make_lattice_train(
    coeffs: WeightedSeq,
    separation: float,
    profile: RadialProfile,
    recenter: bool = True,
) -> tuple[GridFunction, dict]:
    """Sum over j of coeffs[j] times modulated copies of the narrowband profile,
    one per admissible integer frequency of shell j, spatially spread with the
    given separation.  Returns the witness and the per-shell index sets."""
    if coeffs.kind != SeqKind.DYADIC:
        raise ValueError("lattice trains take a dyadic coefficient sequence")
    spec = profile.spec
    ax = spec.axis()
    gammas = {j: gamma_shell_indices(j) for j, v in coeffs.entries.items() if v != 0}
    all_ks = [k for ks in gammas.values() for k in ks]
    if not all_ks:
        return GridFunction(spec, np.zeros(spec.shape, np.complex128)), gammas
    center = separation * (max(all_ks) + min(all_ks)) / 2.0 if recenter else 0.0
    total = np.zeros(spec.shape, dtype=np.complex128)
    for j, amp in sorted(coeffs.entries.items()):
        if amp == 0:
            continue
        for k in gammas[j]:
            modulated = profile.grid.values * np.exp(2j * np.pi * k * ax)
            shift = _integer_shift_samples(spec, k * separation - center)
            total += complex(amp) * np.roll(modulated, shift)
    return check_core_mass(GridFunction(spec, total), label="lattice train"), gammas


@dataclass(frozen=True)
class SignVector:
    """Reproducible +-1 signs attached to integer frequencies."""

    seed: int
    indices: tuple
    signs: np.ndarray = field(repr=False)

    def sign(self, k) -> int:
        return int(self.signs[self.indices.index(k)])


def rademacher_signs(indices, seed: int) -> SignVector:
    indices = tuple(indices)
    rng = np.random.Generator(np.random.Philox(key=seed))
    signs = rng.integers(0, 2, size=len(indices)).astype(np.int8) * 2 - 1
    return SignVector(seed, indices, signs)


def make_signed_lattice_sum(
    coeffs: WeightedSeq,
    signs: SignVector,
    profile: RadialProfile,
) -> GridFunction:
    """Sum over k of sign_k * coeffs[k] * (profile modulated to frequency k)."""
    if coeffs.kind != SeqKind.UNIFORM:
        raise ValueError("signed lattice sums take a uniform coefficient sequence")
    spec = profile.spec
    ax = spec.axis()
    total = np.zeros(spec.shape, dtype=np.complex128)
    for k, amp in coeffs.items():
        if amp == 0:
            continue
        if not isinstance(k, int):
            raise ValueError("signed lattice sums are one-dimensional (integer indices)")
        if abs(k) + float(profile.support[1]) >= spec.nyquist:
            raise ValueError(f"lattice frequency {k} outside the resolvable band")
        total += signs.sign(k) * complex(amp) * profile.grid.values * np.exp(2j * np.pi * k * ax)
    return check_core_mass(GridFunction(spec, total), label="signed lattice sum")


# ---------------------------------------------------------------------------
# Atoms
# ---------------------------------------------------------------------------


class AtomKind(Enum):
    SMALL = "small"  # cube volume < 1, vanishing moments
    BIG = "big"      # cube volume >= 1


@dataclass
class Atom:
    values: GridFunction
    cube_center: float
    cube_side: float
    kind: AtomKind
    p: Exponent


def make_atom(
    kind: AtomKind,
    p,
    cube_side: float,
    seed: int,
    spec: GridSpec,
    center: float = 0.0,
) -> Atom:
    """Pseudo-random smooth bump on a cube, normalized to sup-norm |Q|^(-1/p).

    SMALL atoms are orthogonalized against all monomials of degree at most
    floor(n*(1/p - 1)) before normalization.
    """
    if spec.n != 1:
        raise NotImplementedError("atoms are generated on one-dimensional grids")
    pexp = Exponent.from_p(p)
    if pexp.is_inf:
        raise ValueError("atoms need a finite exponent p")
    volume = cube_side**spec.n
    if kind == AtomKind.SMALL and volume >= 1.0:
        raise ValueError("a SMALL atom needs cube volume < 1")
    if kind == AtomKind.BIG and volume < 1.0:
        raise ValueError("a BIG atom needs cube volume >= 1")
    if cube_side < 8 * spec.dx:
        raise ValueError("cube is below grid resolution")

    ax = spec.axis()
    local = (ax - center) * (2.0 / cube_side)  # cube interior maps to (-1, 1)
    cutoff = plateau(np.abs(local), 0.7, 0.95)
    inside = cutoff > 0.0

    rng = np.random.Generator(np.random.Philox(key=seed))
    coeff = rng.normal(size=5)
    raw = np.polynomial.polynomial.polyval(np.clip(local, -1.0, 1.0), coeff) * cutoff

    if kind == AtomKind.SMALL:
        n_moments = int(math.floor(spec.n * (pexp.u - 1)))  # u = 1/p
        if n_moments >= 0:
            # moments are integrals over the cube, so the monomials are masked to it
            basis = [np.where(inside, local**m, 0.0) for m in range(n_moments + 1)]
            ortho = []
            for vec in basis:
                v = vec.copy()
                for u in ortho:
                    v -= np.dot(u, v) * u
                norm = math.sqrt(float(np.dot(v, v)))
                if norm < 1e-12:
                    raise ValueError("degenerate cube: cannot orthogonalize moments")
                ortho.append(v / norm)
            for u in ortho:
                raw = raw - np.dot(u, raw) * u
            raw = raw * inside  # keep exact support after projection

    peak = float(np.abs(raw).max())
    if peak < 1e-10:
        raise ValueError("degenerate atom profile; change the seed")
    target = volume ** (-float(pexp.u))  # |Q|^(-1/p)
    vals = (raw * (target / peak)).astype(np.complex128)
    return Atom(GridFunction(spec, vals), center, cube_side, kind, pexp)


# ---------------------------------------------------------------------------
# Truncated sequence generators
# ---------------------------------------------------------------------------


def make_truncated_seq(
    kind: str,
    size: int,
    seq_kind: SeqKind = SeqKind.DYADIC,
    theta=None,
    seed: Optional[int] = None,
) -> WeightedSeq:
    """Deterministic finitely supported sequences: spike, flat, power(theta),
    triangle, random(seed).

    Dyadic sequences occupy indices 0..size-1; uniform ones occupy |k| <= size.
    power gives 2^(-j*theta) (dyadic) or <k>^(-theta) (uniform); triangle gives
    the Cesaro profile 1 - |k|/(size+1) (uniform only), whose series is a
    nonnegative kernel with unit mean.
    """
    if size < 1:
        raise ValueError("size must be positive")
    if seq_kind == SeqKind.DYADIC:
        indices = list(range(size))
    else:
        indices = list(range(-size, size + 1))

    if kind == "spike":
        return WeightedSeq(seq_kind, {0: 1.0 + 0.0j})
    if kind == "flat":
        return WeightedSeq(seq_kind, {i: 1.0 + 0.0j for i in indices})
    if kind == "power":
        if theta is None:
            raise ValueError("power sequences need theta")
        th = float(as_rational(theta, "theta")) if not isinstance(theta, float) else theta
        entries = {}
        for i in indices:
            if seq_kind == SeqKind.DYADIC:
                entries[i] = complex(2.0 ** (-th * i))
            else:
                entries[i] = complex((1.0 + i * i) ** (-0.5 * th))
        return WeightedSeq(seq_kind, entries)
    if kind == "triangle":
        if seq_kind != SeqKind.UNIFORM:
            raise ValueError("triangle sequences are uniform-lattice only")
        return WeightedSeq(
            seq_kind, {i: complex(1.0 - abs(i) / (size + 1.0)) for i in indices}
        )
    if kind == "random":
        if seed is None:
            raise ValueError("random sequences need a seed")
        rng = np.random.Generator(np.random.Philox(key=seed))
        vals = rng.uniform(0.25, 1.0, size=len(indices))
        return WeightedSeq(seq_kind, {i: complex(v) for i, v in zip(indices, vals)})
    raise ValueError(f"unknown sequence kind {kind!r}")
