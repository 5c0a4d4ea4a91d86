"""Trade-superposition model: log-price as a sum of decaying trade impacts.

    p_t = sum_{l >= 0} G(l) * eps_{t-l} * ln v_{t-l} + eta_t,
    G(l) = c / (l + l0) ** beta

with log-normal volumes and Gaussian noise ``eta``. Signs come from the
hidden-order model by default, which gives them a long memory; ``iid`` is
also available.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.signal import fftconvolve

from .base import SimOutput
from .lambda_model import LambdaModelConfig, simulate_lambda


@dataclass
class TsModelConfig:
    propagator_scale: float = 2.8e-3
    propagator_offset: float = 20.0
    propagator_exponent: float = 0.42
    log_volume_mean: float = 5.5
    log_volume_sd: float = 1.8
    noise_sd: float = 0.01
    length: int = 100_000
    seed: int | None = None
    sign_process: Literal["lambda", "iid"] = "lambda"
    # noise added once to the level (False) or accumulated into a random walk (True)
    cumulative_noise: bool = False

    def __post_init__(self):
        for name in ("propagator_scale", "propagator_offset", "propagator_exponent", "log_volume_sd"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be non-negative")
        if self.sign_process not in ("lambda", "iid"):
            raise ValueError(f"unknown sign process {self.sign_process!r}")


def propagator(lags, cfg: TsModelConfig | None = None) -> np.ndarray:
    cfg = cfg or TsModelConfig()
    lags = np.asarray(lags, dtype=float)
    return cfg.propagator_scale / (lags + cfg.propagator_offset) ** cfg.propagator_exponent


def impact_path(signs, log_volumes, cfg: TsModelConfig | None = None) -> np.ndarray:
    """``sum_l G(l) * signs[t-l] * log_volumes[t-l]`` for every ``t``."""
    flow = np.asarray(signs, dtype=float) * np.asarray(log_volumes, dtype=float)
    kernel = propagator(np.arange(flow.size), cfg)
    return fftconvolve(flow, kernel)[: flow.size]


def simulate_ts(cfg: TsModelConfig) -> SimOutput:
    ss = np.random.SeedSequence(cfg.seed)
    sign_seed, vol_seed = ss.spawn(2)
    if cfg.sign_process == "lambda":
        signs = simulate_lambda(
            LambdaModelConfig(length=cfg.length, seed=int(sign_seed.generate_state(1)[0]))
        ).signs
    else:
        r = np.random.default_rng(sign_seed)
        signs = np.where(r.random(cfg.length) < 0.5, -1, 1).astype(np.int8)
    rng = np.random.default_rng(vol_seed)
    log_v = rng.normal(cfg.log_volume_mean, cfg.log_volume_sd, cfg.length)
    noise = rng.normal(0.0, cfg.noise_sd, cfg.length)
    if cfg.cumulative_noise:
        noise = np.cumsum(noise)
    logp = impact_path(signs, log_v, cfg) + noise
    return SimOutput(signs, np.exp(logp), "ts")
