"""Localize predictable intervals inside a day with Sidak-corrected NP tests.

A day of ``n`` symbols is split into ``S`` consecutive, non-overlapping
segments for every ``S`` up to ``S_max = floor((n - k + 1) / 1000)``, so no
segment is shorter than about 1000 symbols. Each segment gets its own block
length and is tested at level ``1 - (1 - alpha)**(1/S)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .stattests import DEFAULT_ALPHA, np_statistic
from .symbolics import SymbolSequence, block_length

MIN_INTERVAL = 1000


def sidak_alpha(S: int, alpha_family: float = DEFAULT_ALPHA) -> float:
    """Per-test level giving family-wise level ``alpha_family`` over ``S`` independent tests."""
    if int(S) != S or S < 1:
        raise ValueError(f"partition count must be an integer >= 1, got {S}")
    if not 0.0 < alpha_family < 1.0:
        raise ValueError(f"alpha_family must lie in (0, 1), got {alpha_family}")
    # -expm1(log1p(-a)/S) == 1 - (1-a)**(1/S) without cancellation
    return float(-np.expm1(np.log1p(-alpha_family) / S))


def segment_bounds(n: int, S: int) -> list[tuple[int, int]]:
    """Half-open ``[start, stop)`` bounds of ``S`` equal segments; the last takes the remainder."""
    size = n // S
    bounds = [(i * size, (i + 1) * size) for i in range(S)]
    bounds[-1] = (bounds[-1][0], n)
    return bounds


def consecutive_runs(indices: list[int]) -> list[list[int]]:
    """Group sorted interval indices into runs of consecutive values."""
    runs: list[list[int]] = []
    for i in indices:
        if runs and i == runs[-1][-1] + 1:
            runs[-1].append(i)
        else:
            runs.append([i])
    return runs


@dataclass(frozen=True)
class IntervalResult:
    index: int  # 1-based position within the partition
    start: int
    stop: int
    k: int
    p_value: float
    significant: bool


@dataclass
class PartitionScan:
    day: str | None
    n: int
    k: int
    S_max: int
    best_S: int
    alpha_family: float
    per_S: dict[int, list[IntervalResult]] = field(default_factory=dict)

    def significant_indices(self, S: int) -> list[int]:
        return [r.index for r in self.per_S.get(S, []) if r.significant]

    def runs(self, S: int) -> list[list[int]]:
        return consecutive_runs(self.significant_indices(S))

    def as_record(self) -> dict:
        best = self.best_S
        return {
            "day": self.day,
            "n": self.n,
            "k": self.k,
            "S_max": self.S_max,
            "best_S": best,
            "alpha_family": self.alpha_family,
            "significant_intervals": self.significant_indices(best) if best else [],
            "consecutive_runs": [r for r in self.runs(best) if len(r) > 1] if best else [],
            "per_S": {
                str(S): [
                    {
                        "index": r.index,
                        "start": r.start,
                        "stop": r.stop,
                        "k": r.k,
                        "p_value": r.p_value,
                        "significant": r.significant,
                    }
                    for r in results
                ]
                for S, results in self.per_S.items()
            },
        }


def scan_partitions(
    seq: SymbolSequence,
    alpha_family: float = DEFAULT_ALPHA,
    day: str | None = None,
    require_daily: bool = True,
    min_interval: int = MIN_INTERVAL,
) -> PartitionScan:
    """Test every partition count ``S = 1..S_max`` and record the largest one
    with at least one significant segment.

    Parameters
    ----------
    seq : SymbolSequence
        Symbols of one day, after aggregation and symbolization.
    alpha_family : float
        Family-wise level per partition count.
    day : str, optional
        Label carried into the report.
    require_daily : bool
        Localize only inside predictable days: when the whole-day test
        (``S = 1``) is not significant the scan stops there and ``best_S``
        is 0. This keeps the chance that an independent day reports
        ``best_S >= 1`` at ``alpha_family``. With ``False`` every ``S`` is
        tested regardless, and that chance grows with ``S_max`` because each
        partition count is its own family.
    min_interval : int
        Minimum number of NP windows per segment (1000).

    Returns
    -------
    PartitionScan
        ``S_max = 0`` and no results when the day is too short.
    """
    n = seq.n
    if n < 4:
        return PartitionScan(day, n, 0, 0, 0, alpha_family)
    k = block_length(n, seq.s)
    s_max = max(0, (n - k + 1) // min_interval)
    scan = PartitionScan(day, n, k, s_max, 0, alpha_family)
    for S in range(1, s_max + 1):
        level = sidak_alpha(S, alpha_family)
        results = []
        for idx, (lo, hi) in enumerate(segment_bounds(n, S), start=1):
            part = SymbolSequence(seq.symbols[lo:hi], seq.s)
            kk = block_length(part.n, seq.s)
            res = np_statistic(part, kk, alpha=level)
            results.append(IntervalResult(idx, lo, hi, kk, res.p_value, res.predictable))
        scan.per_S[S] = results
        if any(r.significant for r in results):
            scan.best_S = S
        elif S == 1 and require_daily:
            break
    return scan
