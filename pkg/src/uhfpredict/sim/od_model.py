"""Order-driven double-auction model with fundamentalist, chartist and noise traders.

One trader arrives per step and forms an expected return

    r_hat = (g1 * ln(pf / p) / tau_f + g2 * rbar_L + gn * sigma_eps * z) / (g1 + |g2| + gn)

where ``p`` is the last trade price, ``rbar_L`` the mean of the trader's last
``L`` trade returns and the weights are drawn per trader. The expected price
``p * exp(r_hat * tau)`` decides the side. A buyer bids ``p_hat * (1 - kappa)``
(a seller asks ``p_hat * (1 + kappa)``), ``kappa ~ U(0, k_max)``, rounded to
the tick; a bid at or above the best ask executes as a market order against
it, otherwise it rests in the book until filled or ``order_lifetime`` steps
pass.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .base import SimOutput


@dataclass
class OdModelConfig:
    fundamental_price: float = 1000.0
    initial_price: float | None = None
    tick_size: float = 0.01
    # scales of the per-trader weights |N(0, s1)|, N(0, s2), |N(0, sn)|
    fundamentalist_weight: float = 10.0
    chartist_weight: float = 1.0
    noise_weight: float = 1.0
    noise_sd: float = 1e-4
    fundamental_horizon: float = 20.0
    expectation_horizon: float = 20.0
    memory_max: int = 100
    order_lifetime: int = 200
    k_max: float = 0.001
    # resting orders per side seeded uniformly within initial_spread of the start price
    initial_depth: int = 20
    initial_spread: float = 0.001
    length: int = 100_000
    seed: int | None = None
    max_idle_steps: int = 100_000

    def __post_init__(self):
        for name in ("fundamentalist_weight", "chartist_weight", "noise_weight", "noise_sd", "k_max"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        for name in ("fundamental_price", "tick_size", "fundamental_horizon", "expectation_horizon"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.initial_depth < 0 or self.initial_spread < 0:
            raise ValueError("initial_depth and initial_spread must be non-negative")
        if self.memory_max < 1 or self.order_lifetime < 1 or self.length < 1:
            raise ValueError("memory_max, order_lifetime and length must be >= 1")
        if self.fundamentalist_weight + self.chartist_weight + self.noise_weight == 0:
            raise ValueError("at least one trader weight must be positive")


class _Book:
    """Unit-size limit orders in two heaps with lazy deletion of expired orders."""

    def __init__(self):
        self.bids: list = []  # (-price_ticks, order_id)
        self.asks: list = []  # (price_ticks, order_id)
        self.alive: set[int] = set()
        self.expiry: deque = deque()  # (expiry_step, order_id)
        self._next_id = 0

    def add(self, side: int, price: int, expires: int):
        oid = self._next_id
        self._next_id += 1
        heapq.heappush(self.bids if side > 0 else self.asks, (-price if side > 0 else price, oid))
        self.alive.add(oid)
        self.expiry.append((expires, oid))

    def expire(self, step: int):
        while self.expiry and self.expiry[0][0] <= step:
            self.alive.discard(self.expiry.popleft()[1])

    def _clean(self, heap):
        while heap and heap[0][1] not in self.alive:
            heapq.heappop(heap)

    def best_bid(self):
        self._clean(self.bids)
        return -self.bids[0][0] if self.bids else None

    def best_ask(self):
        self._clean(self.asks)
        return self.asks[0][0] if self.asks else None

    def take(self, side: int) -> int:
        """Remove and return the best opposite price for an incoming order of ``side``."""
        heap = self.asks if side > 0 else self.bids
        self._clean(heap)
        price, oid = heapq.heappop(heap)
        self.alive.discard(oid)
        return price if side > 0 else -price


def simulate_od(cfg: OdModelConfig) -> SimOutput:
    rng = np.random.default_rng(cfg.seed)
    tick = cfg.tick_size
    pf = cfg.fundamental_price
    p = cfg.initial_price if cfg.initial_price is not None else pf
    book = _Book()
    for side, lo, hi in ((1, p * (1 - cfg.initial_spread), p), (-1, p, p * (1 + cfg.initial_spread))):
        for px in rng.uniform(lo, hi, cfg.initial_depth):
            ticks = math.floor(px / tick) if side > 0 else math.ceil(px / tick)
            book.add(side, ticks, cfg.order_lifetime)

    signs = np.empty(cfg.length, dtype=np.int8)
    prices = np.empty(cfg.length, dtype=float)
    # running sums of trade log-returns; chartist trend = mean of the last L
    cum = [0.0]

    n_trades = 0
    step = 0
    idle = 0
    batch = 4096
    draws = None
    pos = batch
    while n_trades < cfg.length:
        if pos == batch:
            draws = (
                np.abs(rng.normal(0.0, cfg.fundamentalist_weight, batch)).tolist(),
                rng.normal(0.0, cfg.chartist_weight, batch).tolist(),
                np.abs(rng.normal(0.0, cfg.noise_weight, batch)).tolist(),
                rng.standard_normal(batch).tolist(),
                rng.integers(1, cfg.memory_max + 1, batch).tolist(),
                rng.uniform(0.0, cfg.k_max, batch).tolist(),
            )
            pos = 0
        g1, g2, gn, z, L, kappa = (d[pos] for d in draws)
        pos += 1
        step += 1
        book.expire(step)

        if g2 != 0.0 and n_trades:
            L = min(L, n_trades)
            trend = (cum[-1] - cum[-1 - L]) / L
        else:
            trend = 0.0
        wsum = g1 + abs(g2) + gn
        r_hat = (g1 * math.log(pf / p) / cfg.fundamental_horizon + g2 * trend + gn * cfg.noise_sd * z) / wsum
        p_hat = p * math.exp(r_hat * cfg.expectation_horizon)

        traded = None
        if p_hat > p:
            bid = math.floor(p_hat * (1.0 - kappa) / tick)
            ask = book.best_ask()
            if ask is not None and bid >= ask:
                traded = (1, book.take(1))
            else:
                book.add(1, bid, step + cfg.order_lifetime)
        elif p_hat < p:
            ask_px = math.ceil(p_hat * (1.0 + kappa) / tick)
            bid_best = book.best_bid()
            if bid_best is not None and ask_px <= bid_best:
                traded = (-1, book.take(-1))
            else:
                book.add(-1, ask_px, step + cfg.order_lifetime)

        if traded is None:
            idle += 1
            if idle > cfg.max_idle_steps:
                raise RuntimeError(
                    f"no trade in {cfg.max_idle_steps} consecutive arrivals after {n_trades} trades"
                )
            continue
        idle = 0
        side, px_ticks = traded
        new_p = px_ticks * tick
        cum.append(cum[-1] + math.log(new_p / p))
        p = new_p
        signs[n_trades] = side
        prices[n_trades] = new_p
        n_trades += 1
    return SimOutput(signs, prices, "od", {"steps": step})
