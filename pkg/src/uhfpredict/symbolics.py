"""Symbol sequences, binary symbolization of returns and block frequencies.

Blocks of ``k`` symbols are encoded as integers in ``[0, s**k - 1]`` using
base-``s`` positional notation, earliest symbol first (most significant
digit). With that convention the length ``k - 1`` prefix of a block code is
``code // s`` and the last symbol is ``code % s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

Mode = Literal["non-overlapping", "overlapping"]


@dataclass(frozen=True)
class SymbolSequence:
    """A finite sequence of integer symbols from the alphabet ``{0, ..., s-1}``."""

    symbols: np.ndarray
    s: int = 2

    def __post_init__(self):
        arr = np.asarray(self.symbols)
        if arr.ndim != 1:
            raise ValueError("symbols must be one-dimensional")
        if arr.size and not np.issubdtype(arr.dtype, np.integer):
            if not np.all(np.equal(np.mod(arr, 1), 0)):
                raise ValueError("symbols must be integer codes")
        arr = arr.astype(np.int64, copy=True)
        if int(self.s) < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.s}")
        if arr.size and (arr.min() < 0 or arr.max() >= self.s):
            raise ValueError(f"symbol codes must lie in [0, {self.s - 1}]")
        arr.setflags(write=False)
        object.__setattr__(self, "symbols", arr)
        object.__setattr__(self, "s", int(self.s))

    @classmethod
    def from_string(cls, text: str, s: int | None = None) -> "SymbolSequence":
        """Build from a digit string such as ``"0101"``; whitespace and commas are ignored."""
        digits = [int(ch) for ch in text if ch not in " \t\r\n,"]
        arr = np.array(digits, dtype=np.int64)
        if s is None:
            s = max(2, int(arr.max()) + 1) if arr.size else 2
        return cls(arr, s)

    def __len__(self) -> int:
        return int(self.symbols.size)

    @property
    def n(self) -> int:
        return int(self.symbols.size)

    def relabel(self, permutation: Sequence[int]) -> "SymbolSequence":
        """Apply an alphabet permutation: symbol ``c`` becomes ``permutation[c]``."""
        perm = np.asarray(permutation, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.s)):
            raise ValueError("permutation must be a rearrangement of range(s)")
        return SymbolSequence(perm[self.symbols], self.s)

    def __str__(self) -> str:
        if self.s <= 10:
            return "".join(map(str, self.symbols.tolist()))
        return ",".join(map(str, self.symbols.tolist()))


@dataclass(frozen=True)
class BlockHistogram:
    """Counts of length-``k`` blocks, stored densely over all ``s**k`` codes."""

    k: int
    s: int
    mode: Mode
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def as_dict(self) -> dict[int, int]:
        """Mapping from block code to count, observed blocks only."""
        nz = np.flatnonzero(self.counts)
        return {int(c): int(self.counts[c]) for c in nz}

    def as_labels(self) -> dict[str, int]:
        """Like :meth:`as_dict` but keyed by the block written as a digit string."""
        return {
            "".join(map(str, decode_block(c, self.k, self.s))): v
            for c, v in self.as_dict().items()
        }


def block_length(n: int, s: int = 2) -> int:
    """Block length ``max(2, floor(0.5 * log_s(n)))``.

    Evaluated in integer arithmetic: the largest ``k`` with ``s**(2k) <= n``.
    """
    if s < 2:
        raise ValueError(f"alphabet size must be >= 2, got {s}")
    if n < 4:
        raise ValueError(f"sequence length must be >= 4, got {n}")
    k = 0
    while s ** (2 * (k + 1)) <= n:
        k += 1
    return max(2, k)


def encode_block(block: Sequence[int], s: int = 2) -> int:
    code = 0
    for sym in block:
        if not 0 <= sym < s:
            raise ValueError(f"symbol {sym} outside alphabet of size {s}")
        code = code * s + int(sym)
    return code


def decode_block(code: int, k: int, s: int = 2) -> tuple[int, ...]:
    if not 0 <= code < s**k:
        raise ValueError(f"block code {code} outside [0, {s**k - 1}]")
    out = []
    for _ in range(k):
        code, digit = divmod(code, s)
        out.append(digit)
    return tuple(reversed(out))


def block_codes(symbols: np.ndarray, k: int, s: int, mode: Mode = "non-overlapping") -> np.ndarray:
    """Integer block codes along the last axis of ``symbols``.

    Works on a single sequence (1-d) or a batch of equal-length sequences
    (2-d, one per row).
    """
    x = np.asarray(symbols, dtype=np.int64)
    n = x.shape[-1]
    if k < 1 or k > n:
        raise ValueError(f"block length must satisfy 1 <= k <= n, got k={k}, n={n}")
    if mode == "non-overlapping":
        nb = n // k
        blocks = x[..., : nb * k].reshape(x.shape[:-1] + (nb, k))
        weights = s ** np.arange(k - 1, -1, -1, dtype=np.int64)
        return blocks @ weights
    if mode == "overlapping":
        m = n - k + 1
        codes = np.zeros(x.shape[:-1] + (m,), dtype=np.int64)
        for j in range(k):
            codes *= s
            codes += x[..., j : j + m]
        return codes
    raise ValueError(f"unknown mode {mode!r}")


def batch_block_counts(symbols: np.ndarray, k: int, s: int, mode: Mode = "non-overlapping") -> np.ndarray:
    """Dense block counts, shape ``(..., s**k)``, for 1-d or 2-d symbol arrays."""
    codes = block_codes(symbols, k, s, mode)
    size = s**k
    if codes.ndim == 1:
        return np.bincount(codes, minlength=size)
    rows = codes.shape[0]
    offset = (np.arange(rows, dtype=np.int64) * size)[:, None]
    flat = np.bincount((codes + offset).ravel(), minlength=rows * size)
    return flat.reshape(rows, size)


def count_blocks(seq: SymbolSequence, k: int, mode: Mode = "non-overlapping") -> BlockHistogram:
    """Histogram of blocks of length ``k``.

    Non-overlapping mode counts the ``floor(n/k)`` consecutive blocks;
    overlapping mode counts all ``n - k + 1`` windows.
    """
    if k > seq.n:
        raise ValueError(f"block length k={k} exceeds sequence length n={seq.n}")
    counts = batch_block_counts(seq.symbols, k, seq.s, mode)
    counts.setflags(write=False)
    return BlockHistogram(k=k, s=seq.s, mode=mode, counts=counts)


def log_returns(prices: Sequence[float] | np.ndarray) -> np.ndarray:
    """``ln(P_t / P_{t-1})`` for consecutive prices."""
    p = np.asarray(prices, dtype=float)
    if p.size and np.any(p <= 0):
        raise ValueError("prices must be positive")
    return np.diff(np.log(p))


def price_moves(prices: Sequence[float] | np.ndarray) -> np.ndarray:
    """Signs of consecutive price changes, exact for integer tick prices."""
    p = np.asarray(prices)
    if np.issubdtype(p.dtype, np.integer):
        return np.sign(np.diff(p.astype(np.int64)))
    return np.sign(log_returns(p))


def symbolize_binary(returns: Sequence[float] | np.ndarray) -> tuple[SymbolSequence, int]:
    """Map returns to symbols: negative -> 0, positive -> 1, exact zeros dropped.

    Returns
    -------
    seq : SymbolSequence
        Binary sequence of the non-zero returns, in order.
    n_zero : int
        Number of zero returns removed.
    """
    r = np.asarray(returns, dtype=float)
    keep = r != 0
    symbols = (r[keep] > 0).astype(np.int64)
    return SymbolSequence(symbols, 2), int(r.size - np.count_nonzero(keep))


def symbolize_prices(prices: Sequence[float] | np.ndarray) -> tuple[SymbolSequence, int]:
    """Symbolize a price path. Integer tick prices are compared exactly."""
    return symbolize_binary(price_moves(prices))


def aggregate_prices(prices: Sequence, a: int) -> np.ndarray:
    """Keep the last price of every step of ``a`` transactions.

    Selects the (1-based) indices ``a, 2a, 3a, ...``; an incomplete final
    step is dropped.
    """
    if int(a) != a or a < 1:
        raise ValueError(f"aggregation level must be an integer >= 1, got {a}")
    p = np.asarray(prices)
    return p[a - 1 :: a][: p.shape[0] // a]
