"""Hidden-order (lambda) model of trade signs.

``N`` slots each hold at most one hidden order, a sign and a number of unit
pieces still to execute. Every step one non-empty slot is picked uniformly
and executes one piece. A slot that empties is refilled with probability
``lam`` straight away; otherwise it stays empty, and every later step gives
each empty slot another refill chance ``lam``. A new hidden order gets a
fair random sign and a size ``ceil(Pareto(alpha))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import SimOutput


@dataclass
class LambdaModelConfig:
    n_orders: int = 21
    alpha: float = 1.63
    lam: float = 0.38
    length: int = 100_000
    seed: int | None = None
    # every hidden order has one piece (sizes fixed at 1)
    unit_volumes: bool = False
    # refill chance for empty slots at each later step; False leaves only the immediate draw
    refill_every_step: bool = True

    def __post_init__(self):
        if self.n_orders < 1:
            raise ValueError("n_orders must be >= 1")
        if self.alpha <= 1:
            raise ValueError("alpha must exceed 1")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lam must lie in [0, 1]")
        if self.length < 1:
            raise ValueError("length must be >= 1")


def pareto_sizes(rng: np.random.Generator, alpha: float, size=None):
    """Integer hidden-order sizes ``ceil(X)`` for ``X = U**(-1/alpha) - 1`` on ``(0, inf)``.

    The sizes start at 1 and ``P(size >= m) = m**-alpha`` exactly.
    """
    u = 1.0 - rng.random(size)
    return np.maximum(np.ceil(u ** (-1.0 / alpha) - 1.0), 1.0)


def simulate_lambda(cfg: LambdaModelConfig) -> SimOutput:
    rng = np.random.default_rng(cfg.seed)
    N, lam, T = cfg.n_orders, cfg.lam, cfg.length

    def new_size():
        return 1 if cfg.unit_volumes else int(pareto_sizes(rng, cfg.alpha))

    sign = [0] * N
    remaining = [0] * N
    active: list[int] = []
    empty: list[int] = []
    for slot in range(N):
        sign[slot] = 1 if rng.random() < 0.5 else -1
        remaining[slot] = new_size()
        active.append(slot)

    pick = rng.random(T)
    if cfg.refill_every_step:
        # refill[t, e - 1] = refills among e empty slots at step t
        refill = np.cumsum(rng.random((T, N)) < lam, axis=1).tolist()
    completed: list[int] = []
    sizes = {slot: remaining[slot] for slot in range(N)}
    out = np.empty(T, dtype=np.int8)

    def fill(slot):
        sign[slot] = 1 if rng.random() < 0.5 else -1
        remaining[slot] = sizes[slot] = new_size()
        active.append(slot)

    for t in range(T):
        if cfg.refill_every_step and empty:
            r = refill[t][len(empty) - 1]
            for _ in range(r):
                fill(empty.pop())
        if not active and lam == 0:
            raise RuntimeError("every hidden order is exhausted and lam=0 never refills")
        while not active:
            # all slots empty: redraw refills without advancing time
            for slot in [e for e in empty if rng.random() < lam]:
                empty.remove(slot)
                fill(slot)
        j = int(pick[t] * len(active))
        slot = active[j]
        out[t] = sign[slot]
        remaining[slot] -= 1
        if remaining[slot] == 0:
            completed.append(sizes[slot])
            active[j] = active[-1]
            active.pop()
            if rng.random() < lam:
                fill(slot)
            else:
                empty.append(slot)
    return SimOutput(out, None, "lambda", {"completed_sizes": np.array(completed, dtype=np.int64)})
