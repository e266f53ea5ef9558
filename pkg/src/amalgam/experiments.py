"""Probe harness: slope and divergence experiments, brute-force sequence
oracles, Monte Carlo sign averages, and decision-surface atlases.

Probes never certify an embedding; they corroborate (bounded ratios) or
refute at scale (ratio growth at least 2x with a clean positive log-log
slope).  Borderline runs report Inconclusive rather than guessing.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .exponents import (
    EmbeddingVerdict,
    Exponent,
    Family,
    SpaceSpec,
    embed_besov_in_wiener,
    embed_hardy_in_wiener,
    embed_lebesgue_in_wiener,
    embed_seq_dyadic,
    embed_seq_uniform,
    embed_wiener_in_besov,
    embed_wiener_in_hardy,
    embed_wiener_in_lebesgue,
    embed_wiener_in_wiener,
    lower_region,
    lower_threshold,
    upper_region,
    upper_threshold,
)
from .filters import build_filter_bank
from .grid import GridFunction, GridSpec
from .norms import (
    SeqKind,
    WeightedSeq,
    exponent_value,
    fourier_series_norm,
    localized_norm,
    seq_norm,
    space_norm,
)
from .stft import WindowKind
from .witnesses import (
    RadialProfile,
    lowpass_profile,
    make_scaled_lowpass,
    make_shell_bump,
    make_shell_train,
    make_truncated_seq,
    narrowband_profile,
    shell_profile,
)

__all__ = [
    "VERDICT_CONSISTENT",
    "VERDICT_DIVERGENCE",
    "VERDICT_INCONCLUSIVE",
    "ExperimentReport",
    "ProbeConfig",
    "loglog_fit",
    "scaling_probe",
    "embedding_probe",
    "OracleResult",
    "seq_embedding_oracle",
    "khinchin_mc",
    "region_atlas",
    "localization_check",
    "fourier_series_sharpness",
]

VERDICT_CONSISTENT = "ConsistentWithEmbedding"
VERDICT_DIVERGENCE = "DivergenceDetected"
VERDICT_INCONCLUSIVE = "Inconclusive"

#: DivergenceDetected needs at least this ratio growth from first to last point ...
GROWTH_THRESHOLD = 2.0
#: ... and a log-log fit residual below this.
RESIDUAL_THRESHOLD = 0.2
#: Ratios staying below this growth count as consistent with the embedding.
BOUNDED_GROWTH = 1.3


def loglog_fit(xs, ys) -> tuple[float, float]:
    """Least-squares slope of log2(y) against log2(x) plus RMS residual."""
    lx = np.log2(np.asarray(xs, dtype=float))
    ly = np.log2(np.asarray(ys, dtype=float))
    A = np.vstack([lx, np.ones_like(lx)]).T
    coef, *_ = np.linalg.lstsq(A, ly, rcond=None)
    fit = A @ coef
    residual = float(np.sqrt(np.mean((ly - fit) ** 2)))
    return float(coef[0]), residual


@dataclass
class ExperimentReport:
    """Outcome of one probe run.  `runtime` is informational and never serialized."""

    experiment: str
    config: dict
    points: list
    slope: Optional[float]
    residual: Optional[float]
    expected_slope: Optional[float]
    growth: Optional[float]
    verdict: str
    classifier_holds: Optional[bool]
    concordant: Optional[bool]
    seed: int
    runtime: float = 0.0


@dataclass(frozen=True)
class ProbeConfig:
    """Embedding probe configuration; the schedule needs at least 4 points."""

    source: SpaceSpec
    target: SpaceSpec
    family: str
    schedule: tuple
    window: WindowKind
    grid: GridSpec
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.schedule) < 4:
            raise ValueError("probe schedules need at least 4 points to fit a slope")


# ---------------------------------------------------------------------------
# Scaling probes
# ---------------------------------------------------------------------------

_DEFAULT_SCALING_GRIDS = {
    "scaled-lowpass": GridSpec(1, 2048.0, 2**14),
    "shell-bump": GridSpec(1, 128.0, 2**17),
    "constant": GridSpec(1, 64.0, 2**12),
}


def _expected_scaling_slope(family: str, space: SpaceSpec) -> Optional[float]:
    n = space.n
    if family == "constant":
        return 0.0
    if family == "scaled-lowpass":
        # all the norms used here scale like the plain Lebesgue norm
        return n * (1.0 - float(space.p.u))
    if family == "shell-bump":
        if space.family == Family.WIENER:
            return float(space.s) + n * float(space.q.u)
        if space.family in (Family.BESOV, Family.LEBESGUE, Family.TRIEBEL, Family.LOCAL_HARDY):
            return n * (1.0 - float(space.p.u)) + float(space.s)
    return None


def scaling_probe(
    family: str,
    schedule,
    norm_space: SpaceSpec,
    grid: Optional[GridSpec] = None,
    window: WindowKind = WindowKind.GAUSSIAN,
    spacing: float = 0.25,
    seed: int = 0,
) -> ExperimentReport:
    """Fit the log2 growth of one norm along a witness family.

    Families: scaled-lowpass (parameter = frequency scale), shell-bump
    (parameter = shell index), constant (fixed witness, parameter is a dummy).
    """
    t0 = time.perf_counter()
    if grid is None:
        grid = _DEFAULT_SCALING_GRIDS[family]
    bank = None
    if norm_space.family in (Family.BESOV, Family.TRIEBEL):
        top = max(int(p) for p in schedule) if family == "shell-bump" else 1
        bank = build_filter_bank(grid, max(top + 1, 2))
    points = []
    if family == "scaled-lowpass":
        profile = lowpass_profile(grid)
        for eps in schedule:
            f = make_scaled_lowpass(profile, float(eps))
            value = space_norm(f, norm_space, window=window, bank=bank, spacing=spacing)
            points.append({"parameter": float(eps), "value": value})
        xs = [pt["parameter"] for pt in points]
    elif family == "shell-bump":
        profile = shell_profile(grid)
        for j in schedule:
            f = make_shell_bump(profile, int(j))
            value = space_norm(f, norm_space, window=window, bank=bank, spacing=spacing)
            points.append({"parameter": int(j), "value": value})
        xs = [2.0 ** pt["parameter"] for pt in points]
    elif family == "constant":
        from .grid import unit_gaussian

        f = unit_gaussian(grid)
        for t in schedule:
            value = space_norm(f, norm_space, window=window, bank=bank, spacing=spacing)
            points.append({"parameter": float(t), "value": value})
        xs = [pt["parameter"] for pt in points]
    else:
        raise ValueError(f"unknown scaling family {family!r}")

    ys = [pt["value"] for pt in points]
    slope, residual = loglog_fit(xs, ys)
    expected = _expected_scaling_slope(family, norm_space)
    verdict = VERDICT_CONSISTENT
    if expected is not None and abs(slope - expected) > 0.1:
        verdict = VERDICT_INCONCLUSIVE
    return ExperimentReport(
        experiment=f"scaling:{family}",
        config={
            "family": family,
            "schedule": list(schedule),
            "space": norm_space.label(),
            "grid": {"extent": grid.extent, "samples": grid.samples},
            "window": window.value,
        },
        points=points,
        slope=slope,
        residual=residual,
        expected_slope=expected,
        growth=None,
        verdict=verdict,
        classifier_holds=None,
        concordant=None,
        seed=seed,
        runtime=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# Embedding probes
# ---------------------------------------------------------------------------


def _classify_spaces(source: SpaceSpec, target: SpaceSpec) -> Optional[EmbeddingVerdict]:
    """Map a source/target pair onto the matching sharp decision, if one applies."""
    fs, ft = source.family, target.family
    n = source.n
    if fs == Family.WIENER and ft == Family.BESOV and target.s == 0:
        return embed_wiener_in_besov(source.p, source.q, source.s, n)
    if fs == Family.BESOV and ft == Family.WIENER and source.s == 0:
        return embed_besov_in_wiener(target.p, target.q, target.s, n)
    if fs == Family.WIENER and ft == Family.LOCAL_HARDY:
        return embed_wiener_in_hardy(source.p, source.q, source.s, n)
    if fs == Family.LOCAL_HARDY and ft == Family.WIENER:
        return embed_hardy_in_wiener(target.p, target.q, target.s, n)
    if fs == Family.WIENER and ft == Family.LEBESGUE:
        return embed_wiener_in_lebesgue(source.p, source.q, source.s, n)
    if fs == Family.LEBESGUE and ft == Family.WIENER:
        return embed_lebesgue_in_wiener(target.p, target.q, target.s, n)
    if fs == Family.WIENER and ft == Family.WIENER:
        holds = embed_wiener_in_wiener(
            source.p, source.q, source.s, target.p, target.q, target.s, n
        )
        return EmbeddingVerdict(holds, Fraction(0), False)
    return None


def _train_seq_params(config: ProbeConfig):
    """Sequence-space pair mirrored by a shell train for this source/target."""
    src, tgt = config.source, config.target
    n = src.n
    if src.family == Family.WIENER and tgt.family == Family.BESOV:
        wie, bes = src, tgt
        q1, s1 = wie.p, wie.s + Fraction(n) * wie.q.u
        q2, s2 = bes.q, Fraction(n) * (1 - bes.p.u)
    elif src.family == Family.BESOV and tgt.family == Family.WIENER:
        bes, wie = src, tgt
        q1, s1 = bes.q, Fraction(n) * (1 - bes.p.u)
        q2, s2 = wie.p, wie.s + Fraction(n) * wie.q.u
    else:
        raise ValueError("shell-train probes pair the time-frequency and dyadic families")
    return q1, s1, q2, s2


def _train_coeffs(config: ProbeConfig, truncation: int) -> WeightedSeq:
    spec = config.params.get("coeffs", "oracle")
    if spec == "oracle":
        q1, s1, q2, s2 = _train_seq_params(config)
        oracle = seq_embedding_oracle(
            q1, s1, q2, s2, SeqKind.DYADIC, budget=max(16, truncation), seed=config.seed
        )
        entries = {j: v for j, v in oracle.witness.entries.items() if j < truncation}
        return WeightedSeq(SeqKind.DYADIC, entries)
    if spec == "flat":
        return make_truncated_seq("flat", truncation, SeqKind.DYADIC)
    if isinstance(spec, tuple) and spec[0] == "power":
        return make_truncated_seq("power", truncation, SeqKind.DYADIC, theta=spec[1])
    raise ValueError(f"unknown coefficient source {spec!r}")


def embedding_probe(config: ProbeConfig) -> ExperimentReport:
    """Evaluate target/source norm ratios along a witness schedule.

    Verdicts follow the report contract: DivergenceDetected needs growth of at
    least 2x plus a positive slope with residual below 0.2; growth below 1.3
    counts as consistent; everything else is Inconclusive.
    """
    t0 = time.perf_counter()
    grid = config.grid
    spacing = config.params.get("spacing", 0.25)
    bank = None
    needs_bank = Family.BESOV in (config.source.family, config.target.family) or Family.TRIEBEL in (
        config.source.family,
        config.target.family,
    )

    points = []
    xs = []
    if config.family == "shell-train":
        separation = float(config.params.get("separation", 16.0))
        profile = shell_profile(grid)
        if needs_bank:
            top = max(int(j) for j in config.schedule) - 1  # truncation J occupies shells 0..J-1
            bank = build_filter_bank(grid, max(top, 2))
        for J in config.schedule:
            coeffs = _train_coeffs(config, int(J))
            f = make_shell_train(coeffs, separation, profile)
            src = space_norm(f, config.source, window=config.window, bank=bank, spacing=spacing)
            tgt = space_norm(f, config.target, window=config.window, bank=bank, spacing=spacing)
            points.append(
                {"parameter": int(J), "source_norm": src, "target_norm": tgt, "ratio": tgt / src}
            )
            xs.append(float(J))
    elif config.family == "scaled-lowpass":
        profile = lowpass_profile(grid)
        if needs_bank:
            bank = build_filter_bank(grid, 2)
        for eps in config.schedule:
            f = make_scaled_lowpass(profile, float(eps))
            src = space_norm(f, config.source, window=config.window, bank=bank, spacing=spacing)
            tgt = space_norm(f, config.target, window=config.window, bank=bank, spacing=spacing)
            points.append(
                {"parameter": float(eps), "source_norm": src, "target_norm": tgt, "ratio": tgt / src}
            )
            xs.append(1.0 / float(eps))
    elif config.family == "shell-bump":
        profile = shell_profile(grid)
        if needs_bank:
            top = max(int(j) for j in config.schedule)
            bank = build_filter_bank(grid, max(top, 2))
        for j in config.schedule:
            f = make_shell_bump(profile, int(j))
            src = space_norm(f, config.source, window=config.window, bank=bank, spacing=spacing)
            tgt = space_norm(f, config.target, window=config.window, bank=bank, spacing=spacing)
            points.append(
                {"parameter": int(j), "source_norm": src, "target_norm": tgt, "ratio": tgt / src}
            )
            xs.append(2.0 ** int(j))
    else:
        raise ValueError(f"unknown probe family {config.family!r}")

    ratios = [pt["ratio"] for pt in points]
    growth = ratios[-1] / ratios[0] if ratios[0] > 0 else math.inf
    slope, residual = loglog_fit(xs, ratios)
    if growth >= GROWTH_THRESHOLD and slope > 0 and residual < RESIDUAL_THRESHOLD:
        verdict = VERDICT_DIVERGENCE
    elif growth < BOUNDED_GROWTH:
        verdict = VERDICT_CONSISTENT
    else:
        verdict = VERDICT_INCONCLUSIVE

    classifier = _classify_spaces(config.source, config.target)
    classifier_holds = None if classifier is None else classifier.holds
    concordant = None
    if classifier_holds is not None:
        concordant = not (verdict == VERDICT_DIVERGENCE and classifier_holds)

    return ExperimentReport(
        experiment="embedding",
        config={
            "source": config.source.label(),
            "target": config.target.label(),
            "family": config.family,
            "schedule": list(config.schedule),
            "window": config.window.value,
            "grid": {"extent": grid.extent, "samples": grid.samples},
            "params": {k: str(v) for k, v in sorted(config.params.items())},
        },
        points=points,
        slope=slope,
        residual=residual,
        expected_slope=None,
        growth=growth,
        verdict=verdict,
        classifier_holds=classifier_holds,
        concordant=concordant,
        seed=config.seed,
        runtime=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# Sequence-space oracle
# ---------------------------------------------------------------------------


@dataclass
class OracleResult:
    holds_estimate: bool
    witness: WeightedSeq
    growth: float
    table: list  # (truncation, best ratio)


def _seq_indices(kind: SeqKind, trunc: int) -> list:
    if kind == SeqKind.DYADIC:
        return list(range(trunc))
    return list(range(-trunc, trunc + 1))


def _log2_weight(kind: SeqKind, key: int, s: float) -> float:
    if kind == SeqKind.DYADIC:
        return s * key
    return 0.5 * s * math.log2(1.0 + key * key)


def _extremal_candidate(kind: SeqKind, trunc: int, q1, s1, q2, s2) -> WeightedSeq:
    """Exact maximizer of the target/source ratio over the truncated index set.

    For q2 >= q1 a spike at the index maximizing the weight quotient is
    extremal; otherwise the sharp Holder witness is a power law with exponent
    r/q1 applied to the weight quotient, 1/r = 1/q2 - 1/q1.
    """
    u1 = 0.0 if math.isinf(q1) else 1.0 / q1
    u2 = 0.0 if math.isinf(q2) else 1.0 / q2
    idx = _seq_indices(kind, trunc)
    logc = np.array([_log2_weight(kind, k, s2) - _log2_weight(kind, k, s1) for k in idx])
    if u2 <= u1:
        best = idx[int(np.argmax(logc))]
        return WeightedSeq(kind, {best: 1.0 + 0.0j})
    if u1 == 0.0:
        logb = np.zeros_like(logc)
    else:
        r = 1.0 / (u2 - u1)
        logb = (r * u1) * logc
    logw1 = np.array([_log2_weight(kind, k, s1) for k in idx])
    loga = logb - logw1
    loga -= loga.max()
    with np.errstate(under="ignore"):
        vals = 2.0**loga
    return WeightedSeq(kind, {k: complex(v) for k, v in zip(idx, vals) if v > 0.0})


def seq_embedding_oracle(
    q1, s1, q2, s2, kind: SeqKind, budget: int = 4096, seed: int = 0
) -> OracleResult:
    """Brute-force check of a weighted sequence-space inclusion.

    Sweeps spike, flat, power-law (including the exact extremal exponent), and
    seeded random perturbations over geometric truncations; the inclusion is
    estimated to fail when the best target/source ratio keeps growing.
    Geometric weights saturate double precision quickly, so dyadic truncations
    are capped at 256.
    """
    q1f = exponent_value(q1, "q1")
    q2f = exponent_value(q2, "q2")
    s1f = _to_float(s1)
    s2f = _to_float(s2)
    cap = 256 if kind == SeqKind.DYADIC else budget
    truncations = []
    t = 16
    while t <= max(16, min(budget, cap)):
        truncations.append(t)
        t *= 2

    rng = np.random.Generator(np.random.Philox(key=seed))
    perturbations = rng.uniform(0.5, 1.5, size=4096 * 2 + 1)

    def candidates(trunc: int):
        yield "extremal", _extremal_candidate(kind, trunc, q1f, s1f, q2f, s2f)
        yield "flat", make_truncated_seq("flat", trunc, kind)
        yield "spike0", make_truncated_seq("spike", trunc, kind)
        top = trunc - 1 if kind == SeqKind.DYADIC else trunc
        yield "spike-top", WeightedSeq(kind, {top: 1.0 + 0.0j})
        for theta in (0.25, 0.5, 1.0):
            yield f"power{theta}", make_truncated_seq("power", trunc, kind, theta=theta)
        base = _extremal_candidate(kind, trunc, q1f, s1f, q2f, s2f)
        noisy = {
            k: v * perturbations[(k if isinstance(k, int) else k[0]) % len(perturbations)]
            for k, v in base.entries.items()
        }
        yield "perturbed", WeightedSeq(kind, noisy)

    table = []
    best_witness = None
    for trunc in truncations:
        best = 0.0
        for _, cand in candidates(trunc):
            denom = seq_norm(cand, q1f, s1f)
            numer = seq_norm(cand, q2f, s2f)
            if denom <= 0.0 or not math.isfinite(numer):
                continue
            ratio = numer / denom
            if ratio > best:
                best = ratio
                if trunc == truncations[-1]:
                    best_witness = cand
        table.append((trunc, best))
    growth = table[-1][1] / table[0][1] if table[0][1] > 0 else math.inf
    holds = growth < 1.15
    if best_witness is None:
        best_witness = make_truncated_seq("spike", 1, kind)
    return OracleResult(holds, best_witness, growth, table)


def _to_float(s) -> float:
    if isinstance(s, (Fraction, int)):
        return float(s)
    if isinstance(s, str):
        return float(Fraction(s))
    return float(s)


# ---------------------------------------------------------------------------
# Monte Carlo sign averages
# ---------------------------------------------------------------------------

_KHINCHIN_GRID = GridSpec(1, 512.0, 2**15)


def khinchin_mc(
    a: WeightedSeq,
    p,
    trials: int,
    seed: int,
    spec: Optional[GridSpec] = None,
    profile: Optional[RadialProfile] = None,
) -> dict:
    """Monte Carlo mean of the p-th power norm of random-sign lattice sums.

    The witness is (narrowband profile) * (random-sign trigonometric
    polynomial); since the polynomial is 1-periodic the spatial sum collapses
    onto one period, which keeps 10^4-trial runs cheap.  Reference value:
    (l_2 norm of the coefficients)^p * (L_p norm of the profile)^p.
    """
    if trials < 1000:
        raise ValueError("use at least 1000 trials")
    if a.kind != SeqKind.UNIFORM:
        raise ValueError("sign averages take a uniform coefficient sequence")
    if spec is None:
        spec = _KHINCHIN_GRID
    if profile is None:
        profile = narrowband_profile(spec)
    pv = exponent_value(p)
    if math.isinf(pv):
        raise ValueError("the sign-average probe needs p < inf")
    keys = sorted(k for k in a.entries if a.entries[k] != 0)
    if not all(isinstance(k, int) for k in keys):
        raise ValueError("one-dimensional integer indices required")
    if keys and max(abs(k) for k in keys) + float(profile.support[1]) >= spec.nyquist:
        raise ValueError("coefficient frequencies outside the resolvable band")

    cells = int(spec.extent)
    per_unit = spec.samples // cells
    g = profile.grid.values
    gp_fold = (np.abs(g) ** pv).reshape(cells, per_unit).sum(axis=0) * spec.dx  # (per_unit,)
    offs_x = (np.arange(per_unit) - spec.samples // 2) * spec.dx
    amps = np.array([a.entries[k] for k in keys], dtype=np.complex128)
    base = np.exp(2j * np.pi * np.outer(offs_x, np.array(keys, dtype=float))) * amps[None, :]

    rng = np.random.Generator(np.random.Philox(key=seed))
    signs = rng.integers(0, 2, size=(trials, len(keys))).astype(np.float64) * 2.0 - 1.0

    empirical = kernels.signed_power_mean(base, gp_fold, signs, pv)
    a_l2 = float(np.sqrt(np.sum(np.abs(amps) ** 2)))
    g_p = float(np.sum(gp_fold)) ** (1.0 / pv) if pv > 0 else 0.0
    reference = (a_l2**pv) * (g_p**pv)
    return {
        "empirical_mean": empirical,
        "reference": reference,
        "ratio": empirical / reference if reference > 0 else math.inf,
        "trials": trials,
        "seed": seed,
    }


# ---------------------------------------------------------------------------
# Decision-surface atlas
# ---------------------------------------------------------------------------


def region_atlas(pair: str, s_mode: str, grid_values, n: int = 1, delta=Fraction(1, 100)) -> list:
    """Tabulate the sharp decision over a rational grid of (1/p, 1/q).

    `pair` is W:B or B:W; `s_mode` is one of at_critical, above, below (the
    offset modes move s by +-delta from the critical value).
    """
    if pair not in ("W:B", "B:W"):
        raise ValueError("the atlas tabulates the W:B and B:W decisions")
    offset = {"at_critical": Fraction(0), "above": delta, "below": -delta}[s_mode]
    rows = []
    for up in grid_values:
        for uq in grid_values:
            p, q = Exponent(up), Exponent(uq)
            if pair == "W:B":
                crit = upper_threshold(p, q, n)
                verdict = embed_wiener_in_besov(p, q, crit + offset, n)
            else:
                crit = lower_threshold(p, q, n)
                verdict = embed_besov_in_wiener(p, q, crit - offset, n)
            rows.append(
                {
                    "u_p": str(up),
                    "u_q": str(uq),
                    "upper_region": upper_region(p, q, n).value,
                    "lower_region": lower_region(p, q, n).value,
                    "critical_s": str(verdict.critical_s),
                    "strict_required": verdict.strict_required,
                    "s": str(crit + offset if pair == "W:B" else crit - offset),
                    "holds": verdict.holds,
                }
            )
    return rows


# ---------------------------------------------------------------------------
# Localization and Fourier-series sharpness
# ---------------------------------------------------------------------------


def localization_check(
    family: list,
    partition,
    space: SpaceSpec,
    window: WindowKind = WindowKind.GAUSSIAN,
    bank=None,
    spacing: float = 0.25,
) -> dict:
    """Ratio of the cellwise-aggregated norm to the direct norm across a family."""
    ratios = []
    for f in family:
        direct = space_norm(f, space, window=window, bank=bank, spacing=spacing)
        local = localized_norm(
            f, partition, space, space.p, window=window, bank=bank, spacing=spacing
        )
        ratios.append(local / direct)
    ratios_arr = np.array(ratios)
    return {
        "ratios": ratios,
        "max_min": float(ratios_arr.max() / ratios_arr.min()),
    }


def fourier_series_sharpness(
    p, q, s, direction: int, budget: int = 256, seed: int = 0
) -> ExperimentReport:
    """Probe the periodic-series inequality in the given direction (1: series
    norm controlled by the weighted coefficient norm; 2: the reverse)."""
    t0 = time.perf_counter()
    if direction not in (1, 2):
        raise ValueError("direction must be 1 or 2")
    verdict_cls = (
        embed_wiener_in_lebesgue(p, q, s) if direction == 1 else embed_lebesgue_in_wiener(p, q, s)
    )
    pv = exponent_value(p)
    qv = exponent_value(q)
    sv = _to_float(s)

    sizes = []
    t = 16
    while t <= budget:
        sizes.append(t)
        t *= 2
    families = [
        ("flat", {}),
        ("triangle", {}),
        ("power", {"theta": 0.5}),
        ("power", {"theta": 1.0}),
        ("spike", {}),
        ("random", {"seed": seed}),
    ]
    points = []
    for N in sizes:
        best = 0.0
        for kind, kw in families:
            a = make_truncated_seq(kind, N, SeqKind.UNIFORM, **kw)
            series = fourier_series_norm(a, pv)
            coeff = seq_norm(a, qv, sv)
            if series <= 0 or coeff <= 0:
                continue
            ratio = series / coeff if direction == 1 else coeff / series
            best = max(best, ratio)
        points.append({"parameter": N, "source_norm": 1.0, "target_norm": best, "ratio": best})
    ratios = [pt["ratio"] for pt in points]
    growth = ratios[-1] / ratios[0]
    slope, residual = loglog_fit(sizes, ratios)
    if growth >= GROWTH_THRESHOLD and slope > 0 and residual < RESIDUAL_THRESHOLD:
        verdict = VERDICT_DIVERGENCE
    elif growth < BOUNDED_GROWTH:
        verdict = VERDICT_CONSISTENT
    else:
        verdict = VERDICT_INCONCLUSIVE
    return ExperimentReport(
        experiment="fourier-series",
        config={"p": str(p), "q": str(q), "s": str(s), "direction": direction, "budget": budget},
        points=points,
        slope=slope,
        residual=residual,
        expected_slope=None,
        growth=growth,
        verdict=verdict,
        classifier_holds=verdict_cls.holds,
        concordant=not (verdict == VERDICT_DIVERGENCE and verdict_cls.holds),
        seed=seed,
        runtime=time.perf_counter() - t0,
    )
