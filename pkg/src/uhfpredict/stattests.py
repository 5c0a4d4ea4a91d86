"""Entropy-bias and Neyman-Pearson tests of independence for symbol sequences.

Both statistics are computed from block counts. The entropy bias uses
non-overlapping blocks and is chi-square with ``s**k - 1`` degrees of freedom
when every block is equally likely. The NP statistic uses overlapping blocks,
read as a contingency table of (length ``k-1`` prefix, next symbol), and is
chi-square with ``(s**(k-1) - 1) * (s - 1)`` degrees of freedom whenever the
next symbol does not depend on the prefix, whatever the symbol probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.special import gammaincc

from .symbolics import BlockHistogram, SymbolSequence, batch_block_counts, count_blocks

TestKind = Literal["entropy-bias", "neyman-pearson"]

DEFAULT_ALPHA = 0.01


@dataclass(frozen=True)
class TestResult:
    statistic: float
    df: int
    p_value: float
    alpha: float
    k: int
    n: int
    test_kind: TestKind
    s: int = 2

    # stop pytest from collecting this class
    __test__ = False

    @property
    def predictable(self) -> bool:
        return bool(self.p_value < self.alpha)

    def as_record(self) -> dict:
        return {
            "test_kind": self.test_kind,
            "n": self.n,
            "s": self.s,
            "k": self.k,
            "statistic": self.statistic,
            "df": self.df,
            "p_value": self.p_value,
            "alpha": self.alpha,
            "predictable": self.predictable,
        }


@dataclass(frozen=True)
class KlDivergence:
    value: float


def chi2_survival(x, df):
    """Upper tail ``P(X > x)`` of the chi-square law with ``df`` degrees of freedom.

    Evaluated as the regularized upper incomplete gamma ``Q(df/2, x/2)``.
    Accepts scalars or arrays.
    """
    x = np.asarray(x, dtype=float)
    df_arr = np.asarray(df)
    if np.any(x < 0) or np.any(np.isnan(x)):
        raise ValueError("chi-square statistic must be non-negative")
    if np.any(df_arr < 1):
        raise ValueError("degrees of freedom must be >= 1")
    p = gammaincc(df_arr / 2.0, x / 2.0)
    return float(p) if p.ndim == 0 else p


def entropy_bias_df(s: int, k: int) -> int:
    return s**k - 1


def np_df(s: int, k: int) -> int:
    return (s ** (k - 1) - 1) * (s - 1)


def _xlogx_ratio(num, den):
    # num * ln(num / den) with 0 ln 0 = 0 and 0 ln(0/0) = 0
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    out = np.zeros(np.broadcast(num, den).shape)
    mask = num > 0
    np.divide(num, den, out=out, where=mask)
    np.log(out, out=out, where=mask)
    out *= num
    return out


def entropy_from_counts(counts) -> np.ndarray | float:
    """Plug-in entropy (nats) of block counts along the last axis."""
    c = np.asarray(counts, dtype=float)
    nb = c.sum(axis=-1)
    if np.any(nb <= 0):
        raise ValueError("histogram is empty")
    p = c / nb[..., None] if c.ndim > 1 else c / nb
    h = -_xlogx_ratio(p, 1.0).sum(axis=-1)
    return float(h) if np.ndim(h) == 0 else h


def entropy_estimate(hist: BlockHistogram) -> float:
    """Plug-in Shannon entropy of a non-overlapping block histogram, in nats."""
    if hist.total <= 0:
        raise ValueError("histogram is empty")
    return float(entropy_from_counts(hist.counts))


def entropy_bias_from_counts(counts, s: int, k: int):
    """``2 n_b (k ln s - H)`` along the last axis of non-overlapping counts."""
    c = np.asarray(counts, dtype=float)
    nb = c.sum(axis=-1)
    # n_b * H = n_b ln n_b - sum f ln f, which avoids a rounding floor at B = 0
    nbh = _xlogx_ratio(nb, 1.0) - _xlogx_ratio(c, 1.0).sum(axis=-1)
    b = 2.0 * (nb * k * np.log(s) - nbh)
    b = np.maximum(b, 0.0)
    return float(b) if np.ndim(b) == 0 else b


def np_statistic_from_counts(counts, s: int, k: int):
    """NP statistic from overlapping length-``k`` block counts (last axis)."""
    c = np.asarray(counts, dtype=float)
    table = c.reshape(c.shape[:-1] + (s ** (k - 1), s))
    total = table.sum(axis=(-2, -1))
    rows = table.sum(axis=-1, keepdims=True)
    cols = table.sum(axis=-2, keepdims=True)
    expected = rows * cols / np.expand_dims(total, (-2, -1))
    d = 2.0 * _xlogx_ratio(table, expected).sum(axis=(-2, -1))
    d = np.maximum(d, 0.0)
    return float(d) if np.ndim(d) == 0 else d


def entropy_bias(seq: SymbolSequence, k: int, alpha: float = DEFAULT_ALPHA) -> TestResult:
    """Entropy-bias test on non-overlapping blocks of length ``k``.

    Examples
    --------
    >>> r = entropy_bias(SymbolSequence.from_string("0101010101"), 2)
    >>> round(r.statistic, 4), r.df, r.predictable
    (13.8629, 3, True)
    """
    if k < 1 or seq.n < k:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={seq.n}")
    hist = count_blocks(seq, k, "non-overlapping")
    b = entropy_bias_from_counts(hist.counts, seq.s, k)
    df = entropy_bias_df(seq.s, k)
    return TestResult(b, df, chi2_survival(b, df), alpha, k, seq.n, "entropy-bias", seq.s)


def np_statistic(seq: SymbolSequence, k: int, alpha: float = DEFAULT_ALPHA) -> TestResult:
    """Neyman-Pearson test on overlapping blocks of length ``k``.

    The ``n - k + 1`` windows are split into a prefix of ``k - 1`` symbols
    and the symbol that follows it; the statistic is twice the
    log-likelihood ratio of the observed table against the product of its
    margins.
    """
    if k < 2 or seq.n <= k:
        raise ValueError(f"need 2 <= k < n, got k={k}, n={seq.n}")
    hist = count_blocks(seq, k, "overlapping")
    d = np_statistic_from_counts(hist.counts, seq.s, k)
    df = np_df(seq.s, k)
    return TestResult(d, df, chi2_survival(d, df), alpha, k, seq.n, "neyman-pearson", seq.s)


def kl_divergence(result: TestResult) -> KlDivergence:
    """KL divergence between empirical block probabilities and their independent product."""
    if result.test_kind != "neyman-pearson":
        raise ValueError("KL divergence is defined for the Neyman-Pearson statistic only")
    return KlDivergence(result.statistic / (2.0 * (result.n - result.k + 1)))


def kl_direct(seq: SymbolSequence, k: int) -> KlDivergence:
    """Evaluate the KL double sum term by term from block probabilities."""
    hist = count_blocks(seq, k, "overlapping")
    total = hist.total
    prefix: dict[int, int] = {}
    last: dict[int, int] = {}
    cells = hist.as_dict()
    for code, f in cells.items():
        i, j = divmod(code, seq.s)
        prefix[i] = prefix.get(i, 0) + f
        last[j] = last.get(j, 0) + f
    value = 0.0
    for code, f in cells.items():
        i, j = divmod(code, seq.s)
        p = f / total
        q = (prefix[i] / total) * (last[j] / total)
        value += p * np.log(p / q)
    return KlDivergence(float(value))


def batch_np_statistic(symbols: np.ndarray, s: int, k: int) -> np.ndarray:
    """NP statistics for each row of a 2-d array of equal-length sequences."""
    return np.atleast_1d(np_statistic_from_counts(batch_block_counts(symbols, k, s, "overlapping"), s, k))


def batch_entropy_bias(symbols: np.ndarray, s: int, k: int) -> np.ndarray:
    """Entropy-bias statistics for each row of a 2-d array of sequences."""
    return np.atleast_1d(entropy_bias_from_counts(batch_block_counts(symbols, k, s, "non-overlapping"), s, k))
