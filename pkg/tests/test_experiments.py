from fractions import Fraction as F

import numpy as np
import pytest

from amalgam.exponents import (
    Exponent,
    Family,
    SpaceSpec,
    embed_seq_dyadic,
    embed_seq_uniform,
    embed_wiener_in_besov,
)
from amalgam.experiments import (
    VERDICT_CONSISTENT,
    VERDICT_DIVERGENCE,
    VERDICT_INCONCLUSIVE,
    ProbeConfig,
    embedding_probe,
    fourier_series_sharpness,
    khinchin_mc,
    localization_check,
    loglog_fit,
    region_atlas,
    scaling_probe,
    seq_embedding_oracle,
)
from amalgam.grid import GridSpec, unit_gaussian
from amalgam.norms import SeqKind, WeightedSeq
from amalgam.stft import WindowKind
from amalgam.witnesses import make_truncated_seq


def _space(fam, p, q, s, n=1):
    return SpaceSpec(fam, Exponent.from_p(p), Exponent.from_p(q), F(s), n)


class TestScalingProbe:
    def test_lowpass_lebesgue_slope(self):
        rep = scaling_probe(
            "scaled-lowpass", tuple(2.0**-k for k in range(1, 6)), _space(Family.LEBESGUE, 2, 2, 0)
        )
        assert abs(rep.slope - 0.5) < 0.1
        assert rep.expected_slope == pytest.approx(0.5)
        assert rep.verdict == VERDICT_CONSISTENT

    def test_shell_wiener_slope(self):
        rep = scaling_probe(
            "shell-bump",
            (2, 3, 4, 5, 6),
            _space(Family.WIENER, 2, 2, 0),
            window=WindowKind.COMPACT_BUMP,
            spacing=1.0,
        )
        assert abs(rep.slope - 0.5) < 0.1

    def test_constant_family(self):
        rep = scaling_probe("constant", (1.0, 2.0, 4.0, 8.0), _space(Family.LEBESGUE, 2, 2, 0))
        assert abs(rep.slope) < 1e-6
        assert rep.expected_slope == 0.0

    def test_schedule_recorded(self):
        rep = scaling_probe("constant", (1.0, 2.0, 4.0, 8.0), _space(Family.LEBESGUE, 2, 2, 0))
        assert [pt["parameter"] for pt in rep.points] == [1.0, 2.0, 4.0, 8.0]


class TestEmbeddingProbe:
    def test_consistent_case(self):
        # probing the (2, 2) diagonal at the critical index: ratios stay bounded
        config = ProbeConfig(
            source=_space(Family.WIENER, 2, 2, 0),
            target=_space(Family.BESOV, 2, 2, 0),
            family="shell-train",
            schedule=(1, 2, 3, 4),
            window=WindowKind.COMPACT_BUMP,
            grid=GridSpec(1, 512.0, 2**15),
            seed=1,
            params={"separation": 16.0, "coeffs": "flat", "spacing": 1.0},
        )
        rep = embedding_probe(config)
        assert rep.verdict == VERDICT_CONSISTENT
        assert rep.classifier_holds is True
        assert rep.concordant is True

    def test_divergent_case_monotone(self):
        config = ProbeConfig(
            source=_space(Family.BESOV, 1, 2, 0),
            target=_space(Family.WIENER, 1, 2, 0),
            family="shell-train",
            schedule=(2, 3, 4, 5),
            window=WindowKind.COMPACT_BUMP,
            grid=GridSpec(1, 512.0, 2**15),
            seed=1,
            params={"separation": 16.0, "coeffs": "oracle", "spacing": 1.0},
        )
        rep = embedding_probe(config)
        assert rep.verdict == VERDICT_DIVERGENCE
        assert rep.classifier_holds is False and rep.concordant is True
        ratios = [pt["ratio"] for pt in rep.points]
        for a, b in zip(ratios[1:], ratios[2:]):
            assert b >= 0.95 * a

    def test_lowpass_family_parseval_regime(self):
        config = ProbeConfig(
            source=_space(Family.LEBESGUE, 2, 2, 0),
            target=_space(Family.WIENER, 2, 2, 0),
            family="scaled-lowpass",
            schedule=(0.5, 0.25, 0.125, 0.0625),
            window=WindowKind.GAUSSIAN,
            grid=GridSpec(1, 1024.0, 2**13),
            seed=0,
            params={"spacing": 0.5},
        )
        rep = embedding_probe(config)
        ratios = [pt["ratio"] for pt in rep.points]
        assert max(ratios) / min(ratios) < 1.02
        assert rep.verdict == VERDICT_CONSISTENT

    def test_schedule_minimum(self):
        with pytest.raises(ValueError):
            ProbeConfig(
                source=_space(Family.WIENER, 2, 2, 0),
                target=_space(Family.BESOV, 2, 2, 0),
                family="shell-train",
                schedule=(1, 2),
                window=WindowKind.GAUSSIAN,
                grid=GridSpec(1, 64.0, 2**12),
            )

    def test_classifier_probe_concordance_suite(self):
        # forty single-shell configurations: wherever the classifier says the
        # embedding holds, the probe must not report divergence
        grid = GridSpec(1, 128.0, 2**14)
        svals = [F(0), F(1, 4), F(1, 2), F(-1, 4), F(1)]
        pqs = [(2, 2), (4, 2), (2, 4), (1, 2)]
        count = 0
        for s in svals:
            for (p, q) in pqs:
                for direction in ("W:B", "B:W"):
                    if count >= 40:
                        break
                    if direction == "W:B":
                        src, tgt = _space(Family.WIENER, p, q, s), _space(Family.BESOV, p, q, 0)
                    else:
                        src, tgt = _space(Family.BESOV, p, q, 0), _space(Family.WIENER, p, q, s)
                    config = ProbeConfig(
                        source=src,
                        target=tgt,
                        family="shell-bump",
                        schedule=(2, 3, 4, 5),
                        window=WindowKind.COMPACT_BUMP,
                        grid=grid,
                        seed=0,
                        params={"spacing": 1.0},
                    )
                    rep = embedding_probe(config)
                    if rep.classifier_holds:
                        assert rep.verdict != VERDICT_DIVERGENCE
                    count += 1
        assert count == 40


class TestSeqOracle:
    def test_true_case(self):
        res = seq_embedding_oracle(2, F(1), 4, F(0), SeqKind.UNIFORM, seed=0)
        assert res.holds_estimate is True

    def test_false_dyadic_with_witness(self):
        res = seq_embedding_oracle(4, F(0), 2, F(0), SeqKind.DYADIC, seed=0)
        assert res.holds_estimate is False
        assert res.witness.entries
        assert res.growth >= 1.5

    def test_identity(self):
        res = seq_embedding_oracle(2, F(0), 2, F(0), SeqKind.DYADIC, seed=0)
        assert res.holds_estimate is True
        assert res.table[-1][1] == pytest.approx(1.0, rel=1e-9)

    def test_concordance_sample(self):
        # quick spot grid; the acceptance suite runs the full 200-case version
        import random

        rng = random.Random(5)
        qs = ["1/2", "1", "2", "4", "inf"]
        svals = [F(-1), F(-1, 2), F(0), F(1, 2), F(1)]
        for _ in range(20):
            q1, q2 = rng.choice(qs), rng.choice(qs)
            s1, s2 = rng.choice(svals), rng.choice(svals)
            kind = rng.choice([SeqKind.UNIFORM, SeqKind.DYADIC])
            res = seq_embedding_oracle(q1, s1, q2, s2, kind, seed=3)
            if kind == SeqKind.UNIFORM:
                want = embed_seq_uniform(q1, s1, q2, s2)
            else:
                want = embed_seq_dyadic(q1, s1, q2, s2)
            assert res.holds_estimate == want, (kind, q1, s1, q2, s2)


class TestKhinchin:
    def test_p2_exact(self):
        a = make_truncated_seq("flat", 8, SeqKind.UNIFORM)
        res = khinchin_mc(a, 2, 1000, seed=7)
        assert res["ratio"] == pytest.approx(1.0, abs=1e-6)

    def test_homogeneity(self):
        a = make_truncated_seq("flat", 8, SeqKind.UNIFORM)
        r1 = khinchin_mc(a, 4, 2000, seed=11)
        r3 = khinchin_mc(a.scaled(3.0), 4, 2000, seed=11)
        assert r3["ratio"] == pytest.approx(r1["ratio"], rel=1e-9)
        assert r3["empirical_mean"] == pytest.approx(r1["empirical_mean"] * 81.0, rel=1e-9)

    def test_flat_vs_spread_p1(self):
        flat = make_truncated_seq("flat", 16, SeqKind.UNIFORM)
        spike = make_truncated_seq("spike", 16, SeqKind.UNIFORM)
        rf = khinchin_mc(flat, 1, 10000, seed=21)["ratio"]
        rs = khinchin_mc(spike, 1, 10000, seed=21)["ratio"]
        assert abs(rf - rs) / rs < 0.15

    def test_deterministic(self):
        a = make_truncated_seq("flat", 8, SeqKind.UNIFORM)
        r1 = khinchin_mc(a, 4, 1000, seed=5)
        r2 = khinchin_mc(a, 4, 1000, seed=5)
        assert r1 == r2

    def test_trial_floor(self):
        a = make_truncated_seq("flat", 4, SeqKind.UNIFORM)
        with pytest.raises(ValueError):
            khinchin_mc(a, 2, 10, seed=1)


class TestAtlas:
    def test_row_count(self):
        values = [F(k, 4) for k in range(0, 9)]
        rows = region_atlas("W:B", "at_critical", values)
        assert len(rows) == 81

    def test_matches_classifier(self):
        values = [F(0), F(1, 2), F(1)]
        rows = region_atlas("W:B", "at_critical", values)
        for row in rows:
            v = embed_wiener_in_besov(Exponent(F(row["u_p"])), Exponent(F(row["u_q"])), F(row["s"]))
            assert row["holds"] == v.holds
            assert F(row["critical_s"]) == v.critical_s

    def test_every_row_has_both_labels(self):
        values = [F(k, 4) for k in range(0, 9)]
        for row in region_atlas("B:W", "above", values):
            assert row["upper_region"] in {"flat", "sum", "half", "border"}
            assert row["lower_region"] in {"flat", "sum", "half", "border"}

    def test_below_critical_always_fails_forward(self):
        values = [F(0), F(1, 4), F(1, 2), F(1)]
        for row in region_atlas("W:B", "below", values):
            assert row["holds"] is False


class TestLocalization:
    def test_singleton_and_translates(self, small_grid, small_partition):
        space = _space(Family.WIENER, 2, 2, 0)
        base = unit_gaussian(small_grid)
        res = localization_check([base], small_partition, space)
        assert res["ratios"][0] > 0
        from amalgam.grid import translate

        res2 = localization_check(
            [base, translate(base, 1.0), translate(base, -3.0)], small_partition, space
        )
        r = res2["ratios"]
        assert max(r) / min(r) < 1.01

    def test_mixed_family_stability(self, small_grid, small_partition, small_bank):
        rng = np.random.Generator(np.random.Philox(key=2))
        fam = [unit_gaussian(small_grid, center=float(c), modulation=float(m))
               for c, m in zip(rng.uniform(-3, 3, 8), rng.uniform(-2, 2, 8))]
        for space, bank in ((_space(Family.WIENER, 2, 2, 0), None),
                            (_space(Family.TRIEBEL, 2, 2, 0), small_bank)):
            res = localization_check(fam, small_partition, space, bank=bank)
            assert res["max_min"] <= 4.0


class TestFourierSeriesSharpness:
    def test_parseval_direction(self):
        rep = fourier_series_sharpness(2, 2, F(0), 1, budget=64, seed=0)
        assert rep.verdict == VERDICT_CONSISTENT
        assert rep.classifier_holds is True

    def test_sup_direction_bounded(self):
        rep = fourier_series_sharpness("inf", 1, F(0), 1, budget=64, seed=0)
        assert rep.classifier_holds is True
        assert rep.verdict == VERDICT_CONSISTENT

    def test_failing_direction_detected(self):
        # series norm against an overly weak coefficient norm: classifier says
        # the inequality fails, and flat sequences witness growth
        rep = fourier_series_sharpness(1, 4, F(0), 2, budget=1024, seed=0)
        assert rep.classifier_holds is False
        assert rep.verdict == VERDICT_DIVERGENCE
        assert rep.concordant is True


class TestLogLogFit:
    def test_exact_power(self):
        xs = [1, 2, 4, 8]
        ys = [3 * x**0.75 for x in xs]
        slope, residual = loglog_fit(xs, ys)
        assert slope == pytest.approx(0.75, abs=1e-12)
        assert residual < 1e-12
