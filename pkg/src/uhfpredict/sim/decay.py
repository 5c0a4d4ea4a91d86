"""Fraction of predictable simulated sequences as a function of sign lag or price aggregation."""

from __future__ import annotations

import dataclasses
from typing import Callable, Iterable, Literal, Sequence

import numpy as np

from ..stattests import DEFAULT_ALPHA, np_statistic
from ..symbolics import SymbolSequence, aggregate_prices, block_length, symbolize_prices
from .base import SimOutput

Axis = Literal["sign-lag", "price-aggregation"]


def run_ensemble(simulate: Callable, cfg, replications: int, seed: int | None = None) -> list[SimOutput]:
    """Run ``replications`` independent copies of a model, each with a spawned seed."""
    children = np.random.SeedSequence(seed).spawn(replications)
    return [
        simulate(dataclasses.replace(cfg, seed=int(child.generate_state(1)[0])))
        for child in children
    ]


def _predictable(symbols: SymbolSequence, alpha: float) -> bool:
    if symbols.n < 4:
        return False
    k = block_length(symbols.n, symbols.s)
    if symbols.n <= k:
        return False
    return np_statistic(symbols, k, alpha).predictable


def sign_predictable(signs: np.ndarray, lag: int, alpha: float = DEFAULT_ALPHA) -> bool:
    """NP verdict on the signs sampled every ``lag`` trades (-1 -> 0, +1 -> 1)."""
    sampled = np.asarray(signs)[::lag]
    return _predictable(SymbolSequence((sampled > 0).astype(np.int64), 2), alpha)


def price_predictable(prices: np.ndarray, a: int, alpha: float = DEFAULT_ALPHA) -> bool:
    """NP verdict on the return signs of prices aggregated by ``a`` transactions."""
    seq, _ = symbolize_prices(aggregate_prices(prices, a))
    return _predictable(seq, alpha)


def predictability_decay(
    ensemble: Sequence[SimOutput],
    axis: Axis = "sign-lag",
    levels: Iterable[int] = range(1, 51),
    alpha: float = DEFAULT_ALPHA,
) -> np.ndarray:
    """Fraction of replications judged predictable at each level.

    Returns
    -------
    numpy.ndarray
        Shape ``(len(levels),)``.
    """
    if not ensemble:
        raise ValueError("need at least one replication")
    levels = list(levels)
    out = np.zeros(len(levels))
    for i, lv in enumerate(levels):
        if axis == "sign-lag":
            hits = [sign_predictable(o.signs, lv, alpha) for o in ensemble]
        elif axis == "price-aggregation":
            if any(o.prices is None for o in ensemble):
                raise ValueError("price-aggregation needs a model that produces prices")
            hits = [price_predictable(o.prices, lv, alpha) for o in ensemble]
        else:
            raise ValueError(f"unknown axis {axis!r}")
        out[i] = np.mean(hits)
    return out


def smoothed(fractions, window: int = 5) -> np.ndarray:
    """Moving average over consecutive levels (valid part only)."""
    f = np.asarray(fractions, dtype=float)
    return np.convolve(f, np.ones(window) / window, mode="valid")


def is_non_increasing(fractions, window: int = 5, tol: float = 1e-12) -> bool:
    s = smoothed(fractions, window)
    return bool(np.all(np.diff(s) <= tol))
