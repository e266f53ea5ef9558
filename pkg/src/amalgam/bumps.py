"""Smooth compactly supported cutoffs built from the exp(-1/t) glue.

Every cutoff in the package (frequency-shell filters, partition footprints,
window transforms, witness profiles) comes from the same transition so runs
are bit-reproducible.
"""

from __future__ import annotations

import numpy as np

__all__ = ["smoothstep", "plateau", "annulus"]


def smoothstep(t):
    """C-infinity step: exactly 0 for t <= 0, exactly 1 for t >= 1."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    out[t >= 1.0] = 1.0
    mid = (t > 0.0) & (t < 1.0)
    if np.any(mid):
        tm = t[mid]
        with np.errstate(over="ignore", under="ignore"):
            e1 = np.exp(-1.0 / tm)
            e2 = np.exp(-1.0 / (1.0 - tm))
        out[mid] = e1 / (e1 + e2)
    return out


def plateau(r, flat: float, support: float):
    """Radial bump: exactly 1 for r <= flat, exactly 0 for r >= support."""
    if not 0.0 <= flat < support:
        raise ValueError(f"need 0 <= flat < support, got flat={flat}, support={support}")
    return smoothstep((support - np.asarray(r, dtype=float)) / (support - flat))


def annulus(r, lo_support: float, lo_flat: float, hi_flat: float, hi_support: float):
    """Radial ring: exactly 1 on [lo_flat, hi_flat], exactly 0 outside (lo_support, hi_support)."""
    if not lo_support < lo_flat <= hi_flat < hi_support:
        raise ValueError("annulus radii must satisfy lo_support < lo_flat <= hi_flat < hi_support")
    r = np.asarray(r, dtype=float)
    rising = smoothstep((r - lo_support) / (lo_flat - lo_support))
    falling = smoothstep((hi_support - r) / (hi_support - hi_flat))
    return rising * falling
