"""Exact-arithmetic exponent algebra and sharp embedding decisions.

Lebesgue exponents p in (0, inf] are carried as exact reciprocals u = 1/p,
with u = 0 encoding p = inf, so every threshold comparison in this module is
a rational comparison with no rounding.  Floats are rejected on input: the
difference between ``s >= critical`` and ``s > critical`` is the whole point
of the decision procedures below.

The two critical smoothness thresholds are piecewise-linear functions of
(1/p, 1/q): the upper one is the maximum of three affine branches

    0,   n*(1 - 1/p - 1/q),   n*(1/2 - 1/q)

and the lower one is the minimum of the same three branches.  The reciprocal
square splits into three closed regions according to which branch attains the
extremum; the labels FLAT / SUM / HALF name the attaining branch, and BORDER
marks the single point where all three tie.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

__all__ = [
    "ExponentError",
    "Exponent",
    "Family",
    "SpaceSpec",
    "Region",
    "EmbeddingVerdict",
    "as_rational",
    "upper_threshold",
    "lower_threshold",
    "upper_region",
    "lower_region",
    "embed_wiener_in_besov",
    "embed_besov_in_wiener",
    "embed_wiener_in_hardy",
    "embed_hardy_in_wiener",
    "embed_wiener_in_lebesgue_endpoint",
    "embed_lebesgue_in_wiener_endpoint",
    "embed_wiener_in_lebesgue",
    "embed_lebesgue_in_wiener",
    "embed_wiener_in_wiener",
    "embed_seq_uniform",
    "embed_seq_dyadic",
]

RationalLike = Union[Fraction, int, str]
ExponentLike = Union["Exponent", Fraction, int, str]

HALF = Fraction(1, 2)


class ExponentError(ValueError):
    """Raised for exponent values outside a decision procedure's domain."""


def as_rational(value: RationalLike, what: str = "value") -> Fraction:
    """Convert to an exact Fraction, rejecting floats outright."""
    if isinstance(value, bool):
        raise ExponentError(f"{what} must be rational, got bool")
    if isinstance(value, float):
        raise ExponentError(
            f"{what} must be exact (int, Fraction, or string like '3/4'); floats are not accepted"
        )
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ExponentError(f"cannot parse {what} {value!r} as a rational") from exc
    raise ExponentError(f"{what} must be rational, got {type(value).__name__}")


class Exponent:
    """A Lebesgue exponent p in (0, inf], stored as the exact reciprocal u = 1/p."""

    __slots__ = ("u",)

    def __init__(self, reciprocal: RationalLike):
        u = as_rational(reciprocal, "reciprocal exponent")
        if u < 0:
            raise ExponentError(f"reciprocal exponent must be >= 0, got {u}")
        object.__setattr__(self, "u", u)

    @classmethod
    def from_p(cls, p: ExponentLike) -> "Exponent":
        """Build from the exponent itself; accepts 'inf' (or 'oo') for p = inf."""
        if isinstance(p, Exponent):
            return p
        if isinstance(p, str) and p.strip().lower() in {"inf", "infinity", "oo"}:
            return cls(0)
        value = as_rational(p, "exponent p")
        if value <= 0:
            raise ExponentError(f"exponent must be positive, got {value}")
        return cls(Fraction(1, 1) / value)

    @property
    def p(self):
        """The exponent itself: an exact Fraction, or math.inf when u = 0."""
        import math

        if self.u == 0:
            return math.inf
        return 1 / self.u

    @property
    def is_inf(self) -> bool:
        return self.u == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Exponent) and self.u == other.u

    def __hash__(self) -> int:
        return hash(("Exponent", self.u))

    def __repr__(self) -> str:
        return f"Exponent(p={self})"

    def __str__(self) -> str:
        return "inf" if self.u == 0 else str(Fraction(1, 1) / self.u)


def _recip(p: ExponentLike, what: str = "exponent") -> Fraction:
    """Reciprocal 1/p as an exact Fraction (0 for p = inf)."""
    return Exponent.from_p(p).u if not isinstance(p, Exponent) else p.u


class Family(Enum):
    WIENER = "W"
    MODULATION = "M"
    BESOV = "B"
    TRIEBEL = "F"
    LOCAL_HARDY = "hp"
    LEBESGUE = "L"
    SEQ_UNIFORM = "seq0"
    SEQ_DYADIC = "seq1"


@dataclass(frozen=True)
class SpaceSpec:
    """Tagged descriptor of a function or sequence space."""

    family: Family
    p: Optional[Exponent]
    q: Optional[Exponent]
    s: Fraction
    n: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ExponentError("dimension n must be a positive integer")
        object.__setattr__(self, "s", as_rational(self.s, "smoothness s"))
        if self.family in (Family.SEQ_UNIFORM, Family.SEQ_DYADIC):
            if self.q is None:
                raise ExponentError(f"{self.family.value} space needs q")
            return
        if self.p is None:
            raise ExponentError(f"{self.family.value} space needs p")
        if self.family in (Family.TRIEBEL, Family.LOCAL_HARDY) and self.p.is_inf:
            raise ExponentError(f"{self.family.value} space requires p < inf")

    def label(self) -> str:
        parts = [self.family.value]
        if self.p is not None:
            parts.append(f"p={self.p}")
        if self.q is not None:
            parts.append(f"q={self.q}")
        parts.append(f"s={self.s}")
        return " ".join(parts)


class Region(Enum):
    """Which affine branch attains the threshold extremum at (1/p, 1/q)."""

    FLAT = "flat"      # the 0 branch
    SUM = "sum"        # the n*(1 - 1/p - 1/q) branch
    HALF = "half"      # the n*(1/2 - 1/q) branch
    BORDER = "border"  # all three branches tie


def _branches(p: ExponentLike, q: ExponentLike, n: int):
    up, uq = _recip(p), _recip(q)
    n = int(n)
    if n < 1:
        raise ExponentError("dimension n must be a positive integer")
    return (Fraction(0), n * (1 - up - uq), n * (HALF - uq))


def upper_threshold(p: ExponentLike, q: ExponentLike, n: int = 1) -> Fraction:
    """Critical smoothness above which the time-frequency norm dominates: max of the three branches."""
    return max(_branches(p, q, n))


def lower_threshold(p: ExponentLike, q: ExponentLike, n: int = 1) -> Fraction:
    """Critical smoothness below which the dyadic norm dominates: min of the three branches."""
    return min(_branches(p, q, n))


def _region(branch_values, extremum) -> Region:
    attained = [v == extremum for v in branch_values]
    if all(attained):
        return Region.BORDER
    for hit, label in zip(attained, (Region.FLAT, Region.SUM, Region.HALF)):
        if hit:
            return label
    raise AssertionError("extremum must be attained")


def upper_region(p: ExponentLike, q: ExponentLike, n: int = 1) -> Region:
    b = _branches(p, q, n)
    return _region(b, max(b))


def lower_region(p: ExponentLike, q: ExponentLike, n: int = 1) -> Region:
    b = _branches(p, q, n)
    return _region(b, min(b))


@dataclass(frozen=True)
class EmbeddingVerdict:
    """Outcome of a sharp embedding decision.

    ``holds`` is equivalent to ``s >= critical_s`` (or ``>`` when
    ``strict_required``) for forward decisions, with the comparison flipped
    for reverse decisions.
    """

    holds: bool
    critical_s: Fraction
    strict_required: bool


def _forward(s: Fraction, critical: Fraction, strict: bool) -> EmbeddingVerdict:
    holds = s > critical if strict else s >= critical
    return EmbeddingVerdict(holds, critical, strict)


def _reverse(s: Fraction, critical: Fraction, strict: bool) -> EmbeddingVerdict:
    holds = s < critical if strict else s <= critical
    return EmbeddingVerdict(holds, critical, strict)


def embed_wiener_in_besov(p, q, s, n: int = 1) -> EmbeddingVerdict:
    """Does the s-weighted time-frequency space embed into the dyadic space with the same (p, q)?"""
    s = as_rational(s, "s")
    up, uq = _recip(p), _recip(q)
    return _forward(s, upper_threshold(p, q, n), up < uq)


def embed_besov_in_wiener(p, q, s, n: int = 1) -> EmbeddingVerdict:
    s = as_rational(s, "s")
    up, uq = _recip(p), _recip(q)
    return _reverse(s, lower_threshold(p, q, n), up > uq)


def embed_wiener_in_hardy(p, q, s, n: int = 1) -> EmbeddingVerdict:
    """Embedding into the local Hardy space; requires p < inf."""
    s = as_rational(s, "s")
    up, uq = _recip(p), _recip(q)
    if up == 0:
        raise ExponentError("local Hardy target requires p < inf")
    return _forward(s, upper_threshold(p, q, n), uq < min(up, HALF))


def embed_hardy_in_wiener(p, q, s, n: int = 1) -> EmbeddingVerdict:
    s = as_rational(s, "s")
    up, uq = _recip(p), _recip(q)
    if up == 0:
        raise ExponentError("local Hardy source requires p < inf")
    return _reverse(s, lower_threshold(p, q, n), uq > max(up, HALF))


def embed_wiener_in_lebesgue_endpoint(p, q, s, n: int = 1) -> EmbeddingVerdict:
    """Embedding into L_1 or L_inf; only those two targets are endpoint cases."""
    s = as_rational(s, "s")
    up, uq = _recip(p), _recip(q)
    if up == 1:
        strict = uq < HALF
    elif up == 0:
        strict = uq < 1
    else:
        raise ExponentError(
            "endpoint decision needs p in {1, inf}; for 1 < p < inf use the local Hardy decision"
        )
    return _forward(s, upper_threshold(p, q, n), strict)


def embed_lebesgue_in_wiener_endpoint(p, q, s, n: int = 1) -> EmbeddingVerdict:
    s = as_rational(s, "s")
    up, uq = _recip(p), _recip(q)
    if up == 1:
        strict = uq > 0  # strict unless q = inf
    elif up == 0:
        strict = uq > HALF
    else:
        raise ExponentError(
            "endpoint decision needs p in {1, inf}; for 1 < p < inf use the local Hardy decision"
        )
    return _reverse(s, lower_threshold(p, q, n), strict)


def embed_wiener_in_lebesgue(p, q, s, n: int = 1) -> EmbeddingVerdict:
    """Route to the endpoint decision for p in {1, inf}, else through the local Hardy equivalence."""
    up = _recip(p)
    if up in (0, 1):
        return embed_wiener_in_lebesgue_endpoint(p, q, s, n)
    if up > 1:
        raise ExponentError("Lebesgue target requires p >= 1")
    return embed_wiener_in_hardy(p, q, s, n)


def embed_lebesgue_in_wiener(p, q, s, n: int = 1) -> EmbeddingVerdict:
    up = _recip(p)
    if up in (0, 1):
        return embed_lebesgue_in_wiener_endpoint(p, q, s, n)
    if up > 1:
        raise ExponentError("Lebesgue source requires p >= 1")
    return embed_hardy_in_wiener(p, q, s, n)


def embed_wiener_in_wiener(p1, q1, s1, p2, q2, s2, n: int = 1) -> bool:
    """Exact inclusion test between two time-frequency spaces."""
    s1, s2 = as_rational(s1, "s1"), as_rational(s2, "s2")
    up1, uq1 = _recip(p1), _recip(q1)
    up2, uq2 = _recip(p2), _recip(q2)
    n = int(n)
    first = s2 <= s1 and up2 <= up1 and uq2 + Fraction(s2, n) < uq1 + Fraction(s1, n)
    second = s2 == s1 and up2 <= up1 and uq2 == uq1
    return first or second


def embed_seq_uniform(q1, s1, q2, s2, n: int = 1) -> bool:
    """Inclusion of polynomially weighted sequence spaces over the integer lattice."""
    s1, s2 = as_rational(s1, "s1"), as_rational(s2, "s2")
    uq1, uq2 = _recip(q1), _recip(q2)
    n = int(n)
    first = s2 <= s1 and uq2 + Fraction(s2, n) < uq1 + Fraction(s1, n)
    second = s2 == s1 and uq2 == uq1
    return first or second


def embed_seq_dyadic(q1, s1, q2, s2) -> bool:
    """Inclusion of geometrically weighted sequence spaces over the nonnegative integers."""
    s1, s2 = as_rational(s1, "s1"), as_rational(s2, "s2")
    uq1, uq2 = _recip(q1), _recip(q2)
    return s2 < s1 or (s2 == s1 and uq2 <= uq1)
