import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amalgam.exponents import (
    EmbeddingVerdict,
    Exponent,
    ExponentError,
    Region,
    embed_besov_in_wiener,
    embed_hardy_in_wiener,
    embed_lebesgue_in_wiener_endpoint,
    embed_seq_dyadic,
    embed_seq_uniform,
    embed_wiener_in_besov,
    embed_wiener_in_hardy,
    embed_wiener_in_lebesgue_endpoint,
    embed_wiener_in_wiener,
    lower_region,
    lower_threshold,
    upper_region,
    upper_threshold,
)

HALF = F(1, 2)


def rationals(max_den=8, lo=0, hi=2):
    out = []
    for den in range(1, max_den + 1):
        for num in range(lo * den, hi * den + 1):
            out.append(F(num, den))
    return sorted(set(out))


rational_strategy = st.fractions(min_value=0, max_value=2, max_denominator=16)


class TestExponent:
    def test_roundtrip_exact(self):
        for p in (F(1, 2), F(3), F(7, 5), 1, 2):
            assert Exponent.from_p(p).p == F(p)

    def test_inf(self):
        e = Exponent.from_p("inf")
        assert e.is_inf and e.u == 0 and e.p == math.inf
        assert str(e) == "inf"

    def test_reciprocal_nonnegative(self):
        with pytest.raises(ExponentError):
            Exponent(F(-1, 2))

    def test_floats_rejected(self):
        with pytest.raises(ExponentError):
            Exponent.from_p(0.5)
        with pytest.raises(ExponentError):
            embed_wiener_in_besov(2, 2, 0.25)

    def test_parse_strings(self):
        assert Exponent.from_p("3/4").u == F(4, 3)
        with pytest.raises(ExponentError):
            Exponent.from_p("nonsense")


class TestThresholds:
    # spot values, each checked against the three-branch formula by hand
    @pytest.mark.parametrize(
        "p,q,n,expected",
        [
            ("2", "2", 1, F(0)),
            ("inf", "inf", 1, F(1)),
            ("1", "inf", 1, F(1, 2)),
            ("4", "2", 1, F(1, 4)),
            ("2", "4", 1, F(1, 4)),
            ("1/2", "inf", 1, F(1, 2)),
            ("2", "2", 2, F(0)),
            ("inf", "inf", 2, F(2)),
        ],
    )
    def test_upper_values(self, p, q, n, expected):
        assert upper_threshold(p, q, n) == expected

    @pytest.mark.parametrize(
        "p,q,n,expected",
        [
            ("1", "inf", 1, F(0)),
            ("2", "1", 1, -F(1, 2)),
            ("inf", "1", 1, -F(1, 2)),
            ("1", "2", 1, -F(1, 2)),
            ("4", "1", 1, -F(1, 2)),
        ],
    )
    def test_lower_values(self, p, q, n, expected):
        assert lower_threshold(p, q, n) == expected

    def test_sign_bounds_on_grid(self):
        for up in rationals(6):
            for uq in rationals(6):
                p, q = Exponent(up), Exponent(uq)
                assert upper_threshold(p, q) >= 0
                assert lower_threshold(p, q) <= 0

    @given(up=rational_strategy, uq=rational_strategy, n=st.integers(1, 3))
    @settings(max_examples=300, deadline=None)
    def test_duality(self, up, uq, n):
        # only meaningful on the unit square, where the reflected point is admissible
        if up > 1 or uq > 1:
            return
        p, q = Exponent(F(up)), Exponent(F(uq))
        pd, qd = Exponent(1 - F(up)), Exponent(1 - F(uq))
        assert upper_threshold(p, q, n) == -lower_threshold(pd, qd, n)

    def test_duality_seeded_thousand(self):
        rng = random.Random(20240817)
        for _ in range(1000):
            up = F(rng.randint(0, 64), 64)
            uq = F(rng.randint(0, 64), 64)
            assert upper_threshold(Exponent(up), Exponent(uq)) == -lower_threshold(
                Exponent(1 - up), Exponent(1 - uq)
            )


def _branch_value(region, up, uq, n):
    if region == Region.FLAT:
        return F(0)
    if region == Region.SUM:
        return n * (1 - up - uq)
    if region == Region.HALF:
        return n * (HALF - uq)
    return F(0)  # BORDER: all branches tie at 0


class TestRegions:
    @pytest.mark.parametrize(
        "up,uq,expected",
        [
            (F(1, 4), F(3, 4), Region.FLAT),
            (F(1), F(0), Region.HALF),
            (F(1, 2), F(1, 2), Region.BORDER),
            (F(0), F(0), Region.SUM),
            (F(3, 4), F(3, 4), Region.FLAT),
            (F(1, 4), F(1, 4), Region.SUM),
        ],
    )
    def test_upper_examples(self, up, uq, expected):
        assert upper_region(Exponent(up), Exponent(uq)) == expected

    @pytest.mark.parametrize(
        "up,uq,expected",
        [
            (F(1), F(0), Region.FLAT),
            (F(1, 2), F(1), Region.SUM),
            (F(0), F(1), Region.HALF),
            (F(1, 2), F(1, 2), Region.BORDER),
        ],
    )
    def test_lower_examples(self, up, uq, expected):
        assert lower_region(Exponent(up), Exponent(uq)) == expected

    def test_region_branch_matches_extremum_10000(self):
        # independent piecewise evaluation: the labeled branch value must equal
        # the three-way extremum, at ten thousand random rational points
        rng = random.Random(7)
        for _ in range(10000):
            up = F(rng.randint(0, 48), 24)
            uq = F(rng.randint(0, 48), 24)
            n = rng.randint(1, 2)
            p, q = Exponent(up), Exponent(uq)
            assert _branch_value(upper_region(p, q, n), up, uq, n) == upper_threshold(p, q, n)
            lo = lower_region(p, q, n)
            if lo == Region.BORDER:
                assert lower_threshold(p, q, n) == 0
            else:
                assert _branch_value(lo, up, uq, n) == lower_threshold(p, q, n)


class TestWienerBesov:
    @pytest.mark.parametrize(
        "p,q,s,holds",
        [
            ("2", "2", F(0), True),
            ("4", "2", F(1, 4), False),
            ("4", "2", F(3, 10), True),
        ],
    )
    def test_forward_examples(self, p, q, s, holds):
        assert embed_wiener_in_besov(p, q, s).holds is holds

    @pytest.mark.parametrize(
        "p,q,s,holds",
        [
            ("2", "1", -F(1, 2), True),
            ("1", "2", F(0), False),
            # critical index at (1,2) is -1/2 and strictness is required there
            ("1", "2", -F(1, 2), False),
            ("1", "2", -F(3, 5), True),
        ],
    )
    def test_reverse_examples(self, p, q, s, holds):
        assert embed_besov_in_wiener(p, q, s).holds is holds

    @given(up=rational_strategy, uq=rational_strategy, s=st.fractions(min_value=-2, max_value=2, max_denominator=8))
    @settings(max_examples=300, deadline=None)
    def test_verdict_invariant(self, up, uq, s):
        p, q = Exponent(F(up)), Exponent(F(uq))
        v = embed_wiener_in_besov(p, q, F(s))
        assert v.holds == (s > v.critical_s if v.strict_required else s >= v.critical_s)
        w = embed_besov_in_wiener(p, q, F(s))
        assert w.holds == (s < w.critical_s if w.strict_required else s <= w.critical_s)

    @given(up=rational_strategy, uq=rational_strategy, s=st.fractions(min_value=-2, max_value=2, max_denominator=8))
    @settings(max_examples=300, deadline=None)
    def test_mutual_embedding_only_on_diagonal(self, up, uq, s):
        p, q = Exponent(F(up)), Exponent(F(uq))
        fwd = embed_wiener_in_besov(p, q, F(s))
        rev = embed_besov_in_wiener(p, q, F(s))
        if fwd.holds and rev.holds:
            assert s == 0 and up == uq
            assert upper_threshold(p, q) == lower_threshold(p, q) == 0


class TestWienerHardy:
    def test_examples(self):
        assert embed_wiener_in_hardy("2", "2", F(0)).holds is True
        assert embed_wiener_in_hardy("2", "4", F(1, 4)).holds is False
        # derived by direct evaluation, confirmed by the region-branch oracle above
        v = embed_wiener_in_hardy("1/2", "inf", F(1))
        assert v.critical_s == F(1, 2) and v.strict_required and v.holds

    def test_reverse_examples(self):
        assert embed_hardy_in_wiener("2", "2", F(0)).holds is True
        assert embed_hardy_in_wiener("4", "1", -F(1, 2)).holds is False
        assert embed_hardy_in_wiener("1", "2", -F(1, 2)).holds is True

    def test_rejects_inf(self):
        with pytest.raises(ExponentError):
            embed_wiener_in_hardy("inf", "2", F(0))
        with pytest.raises(ExponentError):
            embed_hardy_in_wiener("inf", "2", F(0))

    def test_consistency_with_nonstrict_zone(self):
        # for 1 < p < inf and 1/q >= min(1/p, 1/2) equality at the critical index is allowed
        rng = random.Random(3)
        for _ in range(300):
            up = F(rng.randint(1, 15), 16)
            uq = F(rng.randint(0, 32), 16)
            if uq < min(up, HALF):
                continue
            p, q = Exponent(up), Exponent(uq)
            v = embed_wiener_in_hardy(p, q, upper_threshold(p, q))
            assert v.holds and not v.strict_required


class TestEndpoints:
    def test_forward(self):
        assert embed_wiener_in_lebesgue_endpoint("1", "2", F(0)).holds is True
        assert embed_wiener_in_lebesgue_endpoint("inf", "1", F(0)).holds is True
        assert embed_wiener_in_lebesgue_endpoint("inf", "2", F(0)).holds is False

    def test_reverse(self):
        v = embed_lebesgue_in_wiener_endpoint("1", "inf", -F(1))
        assert v.holds is True and v.critical_s == 0 and not v.strict_required
        assert embed_lebesgue_in_wiener_endpoint("1", "2", -F(1, 2)).holds is False
        assert embed_lebesgue_in_wiener_endpoint("inf", "2", F(0)).holds is True

    def test_rejects_interior_p(self):
        with pytest.raises(ExponentError):
            embed_wiener_in_lebesgue_endpoint("2", "2", F(0))
        with pytest.raises(ExponentError):
            embed_lebesgue_in_wiener_endpoint("3/2", "2", F(0))


def _wiener_pair_oracle(p1, q1, s1, p2, q2, s2, n=1):
    """Truth-table oracle: evaluate both clauses directly and independently."""
    u = lambda e: Exponent.from_p(e).u
    a = s2 <= s1 and u(p2) <= u(p1) and u(q2) + F(s2, n) < u(q1) + F(s1, n)
    b = s2 == s1 and u(p2) <= u(p1) and u(q2) == u(q1)
    return a or b


class TestWienerWiener:
    @pytest.mark.parametrize(
        "args,expected",
        [
            (("2", "2", F(1), "4", "2", F(1)), True),
            (("2", "2", F(0), "2", "2", F(0)), True),
            (("2", "2", F(0), "2", "4", F(0)), True),
            (("2", "2", F(0), "2", "1", F(0)), False),
        ],
    )
    def test_examples(self, args, expected):
        assert embed_wiener_in_wiener(*args) is expected

    def test_against_truth_table_oracle(self):
        rng = random.Random(11)
        svals = [F(k, 4) for k in range(-4, 5)]
        for _ in range(500):
            args = (
                F(rng.randint(0, 8), 4),
                F(rng.randint(0, 8), 4),
                rng.choice(svals),
                F(rng.randint(0, 8), 4),
                F(rng.randint(0, 8), 4),
                rng.choice(svals),
            )
            p1, q1, s1, p2, q2, s2 = args
            got = embed_wiener_in_wiener(Exponent(p1), Exponent(q1), s1, Exponent(p2), Exponent(q2), s2)
            want = _wiener_pair_oracle(Exponent(p1), Exponent(q1), s1, Exponent(p2), Exponent(q2), s2)
            assert got is want


class TestSequenceLemmas:
    def test_uniform_examples(self):
        assert embed_seq_uniform("2", F(1), "4", F(0)) is True
        assert embed_seq_uniform("2", F(0), "2", F(0)) is True
        assert embed_seq_uniform("inf", F(0), "2", F(0)) is False

    def test_dyadic_examples(self):
        assert embed_seq_dyadic("inf", F(1), "1", F(0)) is True
        assert embed_seq_dyadic("2", F(0), "4", F(0)) is True
        assert embed_seq_dyadic("4", F(0), "2", F(0)) is False

    def test_uniform_brute_force_witness(self):
        # l_inf does not embed into l_2: truncated flat sequences have bounded
        # sup norm and unbounded l_2 norm
        import numpy as np

        for trunc in (16, 256, 4096):
            a = np.ones(2 * trunc + 1)
            assert a.max() == 1.0
            assert np.sqrt((a**2).sum()) > trunc**0.5

    def test_dyadic_brute_force_witness(self):
        # l_4 does not embed into l_2 over dyadic indices: power-law truncations
        import numpy as np

        ratios = []
        for trunc in (16, 256, 4096):
            a = (np.arange(trunc) + 1.0) ** -0.251
            ratios.append(np.sqrt((a**2).sum()) / (np.sum(a**4)) ** 0.25)
        assert ratios[0] < ratios[1] < ratios[2]
        assert ratios[-1] > 2 * ratios[0]
