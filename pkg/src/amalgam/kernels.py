"""Hot reduction kernels: numba-compiled fast path, pure-numpy fallback.

Set the environment variable AMALGAM_NO_NUMBA=1 to force the numpy path
(also used automatically when numba is unavailable).  Both paths reduce in a
fixed order, so results are deterministic per path; `benchmarks/bench_kernels.py`
compares them.

Kernel semantics:

row_weighted_lq(mag, w, q, cell)
    Per row m of `mag`: (sum_l (mag[m,l]*w[l])^q * cell)^(1/q), or the row
    maximum of mag*w when q == inf.

signed_power_mean(base, row_weight, signs, p)
    Mean over sign rows t of sum_x row_weight[x] * |sum_k base[x,k]*signs[t,k]|^p.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = ["USING_NUMBA", "row_weighted_lq", "signed_power_mean"]

_disable = os.environ.get("AMALGAM_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}

USING_NUMBA = False
if not _disable:
    try:
        from numba import njit

        USING_NUMBA = True
    except ImportError:  # pragma: no cover - exercised only without numba
        USING_NUMBA = False


def _np_row_weighted_lq(mag: np.ndarray, w: np.ndarray, q: float, cell: float) -> np.ndarray:
    weighted = mag * w
    if math.isinf(q):
        return weighted.max(axis=1)
    if q == 1.0:
        powered = weighted
    elif q == 2.0:
        powered = np.square(weighted)
    elif q == 4.0:
        powered = np.square(np.square(weighted))
    else:
        powered = weighted**q
    acc = np.sum(powered, axis=1) * cell
    out = np.zeros(mag.shape[0])
    pos = acc > 0.0
    out[pos] = acc[pos] ** (1.0 / q)
    return out


def _np_signed_power_mean(base: np.ndarray, row_weight: np.ndarray, signs: np.ndarray, p: float) -> float:
    trials = signs.shape[0]
    total = 0.0
    block = 256
    for t0 in range(0, trials, block):
        chunk = signs[t0 : t0 + block]
        vals = base @ chunk.T  # (X, block)
        total += float(row_weight @ (np.abs(vals) ** p).sum(axis=1))
    return total / trials


if USING_NUMBA:

    @njit(cache=True)
    def _nb_row_weighted_lq(mag, w, q, cell, use_max):  # pragma: no cover - compiled
        rows, cols = mag.shape
        out = np.zeros(rows)
        block = 1024
        nblocks = (cols + block - 1) // block
        partial = np.zeros(nblocks)
        # power special cases keep the inner loop off the libm pow path
        kind = 0
        if q == 1.0:
            kind = 1
        elif q == 2.0:
            kind = 2
        elif q == 4.0:
            kind = 4
        for m in range(rows):
            if use_max:
                best = 0.0
                for l in range(cols):
                    v = mag[m, l] * w[l]
                    if v > best:
                        best = v
                out[m] = best
            else:
                for b in range(nblocks):
                    acc = 0.0
                    hi = min((b + 1) * block, cols)
                    if kind == 1:
                        for l in range(b * block, hi):
                            acc += mag[m, l] * w[l]
                    elif kind == 2:
                        for l in range(b * block, hi):
                            v = mag[m, l] * w[l]
                            acc += v * v
                    elif kind == 4:
                        for l in range(b * block, hi):
                            v = mag[m, l] * w[l]
                            v2 = v * v
                            acc += v2 * v2
                    else:
                        for l in range(b * block, hi):
                            acc += (mag[m, l] * w[l]) ** q
                    partial[b] = acc
                total = 0.0
                for b in range(nblocks):
                    total += partial[b]
                total *= cell
                out[m] = total ** (1.0 / q) if total > 0.0 else 0.0
        return out

    @njit(cache=True)
    def _nb_signed_power_mean(base, row_weight, signs, p):  # pragma: no cover - compiled
        trials, nk = signs.shape
        npts = base.shape[0]
        total = 0.0
        for t in range(trials):
            acc = 0.0
            for x in range(npts):
                z = 0.0 + 0.0j
                for k in range(nk):
                    z += base[x, k] * signs[t, k]
                acc += row_weight[x] * abs(z) ** p
            total += acc
        return total / trials

    def row_weighted_lq(mag, w, q, cell):
        mag = np.ascontiguousarray(mag, dtype=np.float64)
        w = np.ascontiguousarray(w, dtype=np.float64)
        return _nb_row_weighted_lq(mag, w, float(0.0 if math.isinf(q) else q), float(cell), math.isinf(q))

    def signed_power_mean(base, row_weight, signs, p):
        base = np.ascontiguousarray(base, dtype=np.complex128)
        row_weight = np.ascontiguousarray(row_weight, dtype=np.float64)
        signs = np.ascontiguousarray(signs, dtype=np.float64)
        return float(_nb_signed_power_mean(base, row_weight, signs, float(p)))

else:

    def row_weighted_lq(mag, w, q, cell):
        return _np_row_weighted_lq(
            np.asarray(mag, dtype=np.float64), np.asarray(w, dtype=np.float64), float(q), float(cell)
        )

    def signed_power_mean(base, row_weight, signs, p):
        return float(
            _np_signed_power_mean(
                np.asarray(base, dtype=np.complex128),
                np.asarray(row_weight, dtype=np.float64),
                np.asarray(signs, dtype=np.float64),
                float(p),
            )
        )


# Always-available references for tests and benchmarks.
numpy_row_weighted_lq = _np_row_weighted_lq
numpy_signed_power_mean = _np_signed_power_mean
