"""Per-day characteristics of a symbolized price series."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from ..stattests import DEFAULT_ALPHA, TestResult, np_statistic
from ..symbolics import SymbolSequence, block_length, count_blocks, log_returns, price_moves
from .jumps import detect_jumps
from .tdist import MIN_OBS, fit_student_t

# characteristics compared between predictable and unpredictable days, in table order
CHARACTERISTICS = (
    "n_nonzero",
    "zero_fraction",
    "k",
    "repeat_prob_scaled",
    "symbol_imbalance",
    "daily_increment_magnitude",
    "mean_return",
    "acf1_returns",
    "acf1_abs",
    "t_nu",
    "t_scale",
    "t_shift_magnitude",
    "daily_volume",
    "jump_fraction",
)


def acf_lag1(x) -> float:
    """Lag-1 sample autocorrelation, mean-centered with the biased ``1/n`` normalization.

    Returns NaN for fewer than 3 values or zero variance.
    """
    x = np.asarray(x, dtype=float)
    if x.size < 3:
        return math.nan
    d = x - x.mean()
    denom = float(d @ d)
    if denom == 0.0:
        return math.nan
    return float(d[1:] @ d[:-1]) / denom


def repeat_probability(seq: SymbolSequence, k: int) -> float:
    """Sum of the empirical probabilities of the ``s`` constant blocks of length ``k`` (non-overlapping)."""
    hist = count_blocks(seq, k, "non-overlapping")
    if hist.total == 0:
        return math.nan
    # block (j, j, ..., j) has code j * (s**k - 1) / (s - 1)
    s = seq.s
    step = (s**k - 1) // (s - 1)
    return float(sum(hist.counts[j * step] for j in range(s)) / hist.total)


@dataclass(frozen=True)
class DayProfile:
    n_returns: int
    n_nonzero: int
    zero_fraction: float
    k: int
    repeat_prob_scaled: float
    symbol_imbalance: float
    daily_increment_magnitude: float
    mean_return: float
    acf1_returns: float
    acf1_abs: float
    t_nu: float
    t_scale: float
    t_shift_magnitude: float
    t_converged: bool
    daily_volume: float
    jump_fraction: float
    p_value: float
    verdict: bool
    insufficient: bool = False
    day: str = ""

    def as_record(self) -> dict:
        return asdict(self)


def profile_day(
    prices,
    volumes=None,
    alpha: float = DEFAULT_ALPHA,
    k: int | None = None,
    day: str = "",
    jump_window: int | None = None,
    jump_preaverage: int | None = None,
) -> DayProfile:
    """Characteristic vector of one day.

    Parameters
    ----------
    prices : array_like
        Prices after aggregation, raw or in integer ticks.
    volumes : array_like or float, optional
        Traded sizes of the day (summed) or the total volume.
    alpha : float
        Level of the NP test giving the verdict.
    k : int, optional
        Block length override; ``block_length(n_nonzero)`` by default.

    Notes
    -----
    Symbol statistics and both autocorrelations use non-zero returns. The
    t-fit, the mean return and jump detection use all returns. Fewer than 4
    non-zero returns gives a profile with ``insufficient`` set and NaN fields.
    """
    p = np.asarray(prices)
    r = log_returns(p) if p.size > 1 else np.empty(0)
    moves = price_moves(p) if p.size > 1 else np.empty(0, dtype=np.int64)
    nz = r[moves != 0]
    n_ret, n_nz = int(r.size), int(nz.size)
    if volumes is None:
        volume = math.nan
    else:
        volume = float(np.sum(volumes))
    nan = math.nan
    if n_nz < 4:
        return DayProfile(
            n_ret, n_nz, 1.0 - n_nz / n_ret if n_ret else nan, 0, nan, nan,
            abs(math.log(p[-1] / p[0])) if p.size > 1 else nan, float(r.mean()) if n_ret else nan,
            nan, nan, nan, nan, nan, False, volume, nan, nan, False, True, day,
        )
    seq = SymbolSequence((moves[moves != 0] > 0).astype(np.int64), 2)
    k = k if k is not None else block_length(n_nz, 2)
    test: TestResult = np_statistic(seq, k, alpha)
    if n_ret >= MIN_OBS:
        try:
            fit = fit_student_t(r)
            t_nu, t_scale, t_shift, t_ok = fit.nu, fit.scale, abs(fit.shift), fit.converged
        except ValueError:
            t_nu = t_scale = t_shift = nan
            t_ok = False
    else:
        t_nu = t_scale = t_shift = nan
        t_ok = False
    ones = float(seq.symbols.mean())
    return DayProfile(
        n_returns=n_ret,
        n_nonzero=n_nz,
        zero_fraction=1.0 - n_nz / n_ret,
        k=k,
        repeat_prob_scaled=repeat_probability(seq, k) * 2**k,
        symbol_imbalance=abs(2.0 * ones - 1.0),
        daily_increment_magnitude=abs(math.log(p[-1] / p[0])),
        mean_return=float(r.mean()),
        acf1_returns=abs(acf_lag1(nz)),
        acf1_abs=abs(acf_lag1(np.abs(nz))),
        t_nu=t_nu,
        t_scale=t_scale,
        t_shift_magnitude=t_shift,
        t_converged=t_ok,
        daily_volume=volume,
        jump_fraction=detect_jumps(r, jump_window, jump_preaverage).fraction,
        p_value=test.p_value,
        verdict=test.predictable,
        day=day,
    )


@dataclass(frozen=True)
class PairAnalysis:
    repeat_prob: float
    result: TestResult

    @property
    def predictable(self) -> bool:
        return self.result.predictable


def pair_analysis(seq: SymbolSequence, alpha: float = DEFAULT_ALPHA) -> PairAnalysis:
    """Sum of ``p(jj)`` over non-overlapping pairs, and the NP test with ``k = 2``."""
    if seq.n < 3:
        raise ValueError("pair analysis needs at least 3 symbols")
    return PairAnalysis(repeat_probability(seq, 2), np_statistic(seq, 2, alpha))
