"""Jump detection on pre-averaged returns with a local bipower scale.

Returns are first pre-averaged over overlapping windows of ``w`` consecutive
returns (moving sums, i.e. increments of the price averaged over ``w``
transactions), which damps microstructure noise. Each pre-averaged return is
divided by a local volatility estimate, the bipower variation of the ``K``
preceding pre-averaged returns, pairing terms ``w`` apart so the two factors
never share a raw return. A statistic is called a jump when it exceeds the
1% quantile of the Gumbel law of the maximum of ``n`` standardized normals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MIN_RETURNS = 100
_C = math.sqrt(2.0 / math.pi)  # E|Z| for standard normal Z


@dataclass(frozen=True)
class JumpResult:
    fraction: float
    n_flagged: int
    n_tested: int
    window: int
    preaverage_window: int
    threshold: float
    flagged: np.ndarray  # start index of each flagged pre-averaged window
    insufficient: bool = False


def gumbel_threshold(n: int, level: float = 0.01) -> tuple[float, float, float]:
    """``(C_n, S_n, beta)`` so that ``(|L| - C_n) / S_n > beta`` happens with probability ``level``."""
    if n < 2:
        raise ValueError("need n >= 2")
    root = math.sqrt(2.0 * math.log(n))
    c_n = root / _C - (math.log(math.pi) + math.log(math.log(n))) / (2.0 * _C * root)
    s_n = 1.0 / (_C * root)
    beta = -math.log(-math.log1p(-level))
    return c_n, s_n, beta


def preaverage(returns, w: int) -> np.ndarray:
    """Sums of ``w`` consecutive returns, one per window start (``m - w + 1`` values)."""
    r = np.asarray(returns, dtype=float)
    c = np.concatenate(([0.0], np.cumsum(r)))
    return c[w:] - c[:-w]


def lm_statistics(returns, window: int | None = None, preaverage_window: int | None = None):
    """Pre-averaged returns divided by their trailing bipower scale.

    Returns
    -------
    stats : numpy.ndarray
        One statistic per tested pre-averaged return; 0 where the local scale is 0.
    first : int
        Index of the first tested pre-averaged return.
    w, K : int
        Window sizes actually used.
    """
    r = np.asarray(returns, dtype=float)
    m = r.size
    w = preaverage_window or math.ceil(math.sqrt(m))
    K = window or math.ceil(math.sqrt(m))
    if w < 1 or K < 1:
        raise ValueError("window sizes must be >= 1")
    rbar = preaverage(r, w) if m >= w else np.empty(0)
    first = K + w
    if rbar.size <= first:
        return np.empty(0), first, w, K
    # bp[j] = |rbar[j]| * |rbar[j - w]|, defined for j >= w
    a = np.abs(rbar)
    bp = a[w:] * a[:-w]
    cbp = np.concatenate(([0.0], np.cumsum(bp)))
    idx = np.arange(first, rbar.size)
    # trailing terms j in [i - K, i - 1] map to bp positions j - w
    local = (cbp[idx - w] - cbp[idx - w - K]) / K
    sigma = np.sqrt(np.maximum(local, 0.0) / _C**2)
    stats = np.zeros(idx.size)
    pos = sigma > 0
    stats[pos] = rbar[idx[pos]] / sigma[pos]
    return stats, first, w, K


def detect_jumps(
    returns,
    window: int | None = None,
    preaverage_window: int | None = None,
    level: float = 0.01,
) -> JumpResult:
    """Fraction of tested pre-averaged returns flagged as jumps.

    Parameters
    ----------
    returns : array_like
        Log returns in transaction time, zeros included.
    window : int, optional
        Trailing window ``K`` for the bipower scale, ``ceil(sqrt(m))`` by default.
    preaverage_window : int, optional
        Pre-averaging window ``w``, ``ceil(sqrt(m))`` by default.
    level : float
        Significance level of the Gumbel threshold.

    Notes
    -----
    Fewer than 100 returns, or no complete trailing window, gives fraction 0
    with ``insufficient`` set. A zero local scale (flat prices) yields a
    statistic of 0, never a jump.
    """
    r = np.asarray(returns, dtype=float)
    m = r.size
    empty = np.empty(0, dtype=np.int64)
    if m < MIN_RETURNS:
        return JumpResult(0.0, 0, 0, window or 0, preaverage_window or 0, math.nan, empty, True)
    stats, first, w, K = lm_statistics(r, window, preaverage_window)
    n = stats.size
    if n < 2:
        return JumpResult(0.0, 0, n, K, w, math.nan, empty, True)
    c_n, s_n, beta = gumbel_threshold(n, level)
    threshold = c_n + s_n * beta
    hit = np.abs(stats) > threshold
    flagged = np.flatnonzero(hit) + first
    return JumpResult(float(hit.mean()), int(hit.sum()), n, K, w, threshold, flagged)
