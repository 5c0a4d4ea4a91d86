"""Monte Carlo check of the chi-square null laws of B and D.

iid sequences with a chosen symbol distribution are generated in
seed-partitioned chunks, the statistic is evaluated for each, and the
empirical distribution is compared with the chi-square law through the
one-sample Kolmogorov-Smirnov distance and Q-Q pairs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Literal, Sequence

import numpy as np
from scipy import stats

from .stattests import batch_entropy_bias, batch_np_statistic, entropy_bias_df, np_df
from .symbolics import block_length

Kind = Literal["B", "D"]

KS_COEFFICIENT_1PCT = 1.63
QUANTILE_LEVELS = tuple(np.round(np.arange(0.01, 1.0, 0.01), 2))
CHUNK = 250


@dataclass
class CalibrationReport:
    kind: str
    s: int
    n: int
    k: int
    df: int
    probs: list[float]
    replications: int
    seed: int | None
    levels: list[float]
    empirical_quantiles: list[float]
    theoretical_quantiles: list[float]
    ks_distance: float
    ks_bound: float
    passed: bool
    qq_slope: float
    statistics: np.ndarray = field(default=None, repr=False)

    def as_record(self) -> dict:
        d = asdict(self)
        d.pop("statistics")
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_record(), indent=2)

    def qq_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theoretical_quantile", "empirical_quantile"])
        for t, e in zip(self.theoretical_quantiles, self.empirical_quantiles):
            w.writerow([repr(t), repr(e)])
        return buf.getvalue()


def _check_probs(probs, s: int) -> np.ndarray:
    p = np.asarray(probs, dtype=float)
    if p.shape != (s,):
        raise ValueError(f"need {s} symbol probabilities, got {p.size}")
    if np.any(p < 0) or not math.isclose(p.sum(), 1.0, rel_tol=0, abs_tol=1e-9):
        raise ValueError("symbol probabilities must be non-negative and sum to 1")
    return p / p.sum()


def _chunk(args) -> np.ndarray:
    kind, s, n, k, probs, rows, seed_seq = args
    rng = np.random.default_rng(seed_seq)
    x = rng.choice(s, size=(rows, n), p=probs)
    if kind == "D":
        return batch_np_statistic(x, s, k)
    return batch_entropy_bias(x, s, k)


def simulate_statistics(
    kind: Kind,
    s: int,
    n: int,
    probs: Sequence[float],
    replications: int,
    seed: int | None = None,
    k: int | None = None,
    jobs: int = 1,
) -> np.ndarray:
    """``replications`` values of B or D on iid sequences; identical for any ``jobs``."""
    if kind not in ("B", "D"):
        raise ValueError(f"kind must be 'B' or 'D', got {kind!r}")
    p = _check_probs(probs, s)
    k = k if k is not None else block_length(n, s)
    sizes = [CHUNK] * (replications // CHUNK)
    if replications % CHUNK:
        sizes.append(replications % CHUNK)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    tasks = [(kind, s, n, k, p, rows, ss) for rows, ss in zip(sizes, seeds)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_chunk, tasks))
    else:
        parts = [_chunk(t) for t in tasks]
    return np.concatenate(parts)


def calibrate(
    kind: Kind,
    s: int,
    n: int,
    probs: Sequence[float] | None = None,
    N: int = 2000,
    seed: int | None = None,
    k: int | None = None,
    jobs: int = 1,
) -> CalibrationReport:
    """Compare simulated B or D with its chi-square law.

    Parameters
    ----------
    kind : {"B", "D"}
        Entropy bias (df ``s**k - 1``) or NP statistic (df ``(s**(k-1) - 1)(s - 1)``).
    s, n : int
        Alphabet size and sequence length.
    probs : sequence of float, optional
        Symbol probabilities, uniform by default.
    N : int
        Number of replications, at least 100.
    k : int, optional
        Block length, ``block_length(n, s)`` by default.

    Returns
    -------
    CalibrationReport
        ``passed`` when the KS distance is below ``1.63 / sqrt(N)``.
    """
    if N < 100:
        raise ValueError("need at least 100 replications")
    probs = [1.0 / s] * s if probs is None else list(probs)
    k = k if k is not None else block_length(n, s)
    df = np_df(s, k) if kind == "D" else entropy_bias_df(s, k)
    x = simulate_statistics(kind, s, n, probs, N, seed, k, jobs)
    law = stats.chi2(df)
    ks = float(stats.kstest(x, law.cdf).statistic)
    levels = np.array(QUANTILE_LEVELS)
    emp = np.quantile(x, levels)
    theo = law.ppf(levels)
    slope = float(np.polyfit(theo, emp, 1)[0])
    bound = KS_COEFFICIENT_1PCT / math.sqrt(N)
    return CalibrationReport(
        kind=kind, s=s, n=n, k=k, df=df, probs=[float(v) for v in probs], replications=N,
        seed=seed, levels=levels.tolist(), empirical_quantiles=emp.tolist(),
        theoretical_quantiles=theo.tolist(), ks_distance=ks, ks_bound=bound,
        passed=ks < bound, qq_slope=slope, statistics=x,
    )
