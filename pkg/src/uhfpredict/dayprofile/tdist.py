"""Maximum-likelihood location-scale Student-t fit."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, stats

NU_BOUNDS = (0.5, 100.0)
MIN_OBS = 50


@dataclass(frozen=True)
class TFit:
    nu: float
    scale: float
    shift: float
    loglik: float
    converged: bool
    start_loglik: float
    n: int


def _start(z: np.ndarray) -> tuple[float, float, float]:
    """Moment start on standardized data: (nu, loc, scale)."""
    excess = stats.kurtosis(z)
    nu = 4.0 + 6.0 / excess if np.isfinite(excess) and excess > 0 else 30.0
    return float(np.clip(nu, *NU_BOUNDS)), 0.0, 1.0


def t_loglik(x, nu: float, shift: float, scale: float) -> float:
    return float(np.sum(stats.t.logpdf(x, nu, loc=shift, scale=scale)))


def fit_student_t(x, maxiter: int = 500) -> TFit:
    """Fit ``(nu, scale, shift)`` by direct likelihood maximization.

    The data are standardized by median and MAD before optimizing, which makes
    the fit equivariant under ``c * x + b`` up to rounding. ``nu`` is kept in
    ``[0.5, 100]``. When the optimizer fails, or ends below the starting
    likelihood, the starting values are reported with ``converged=False``.

    Raises
    ------
    ValueError
        Fewer than 50 finite observations, or no spread at all.
    """
    x = np.asarray(x, dtype=float)
    x = x[np.isfinite(x)]
    if x.size < MIN_OBS:
        raise ValueError(f"need at least {MIN_OBS} observations, got {x.size}")
    center = float(np.median(x))
    spread = float(stats.median_abs_deviation(x, scale="normal"))
    if spread == 0.0:
        spread = float(np.std(x))
    if spread == 0.0:
        raise ValueError("observations have no spread")
    z = (x - center) / spread

    nu0, loc0, sc0 = _start(z)
    # log scale keeps the scale positive; its lower bound stops collapse onto a mass point
    lo_log_scale = math.log(1e-8)

    def nll(theta):
        nu, loc, log_sc = theta
        return -float(np.sum(stats.t.logpdf(z, nu, loc=loc, scale=math.exp(log_sc))))

    start = np.array([nu0, loc0, math.log(sc0)])
    start_nll = nll(start)
    res = optimize.minimize(
        nll, start, method="L-BFGS-B",
        bounds=[NU_BOUNDS, (None, None), (lo_log_scale, None)],
        options={"maxiter": maxiter},
    )
    converged = bool(res.success) and np.isfinite(res.fun) and res.fun <= start_nll
    nu, loc, log_sc = res.x if converged else start
    log_jac = x.size * math.log(spread)
    return TFit(
        nu=float(nu),
        scale=float(math.exp(log_sc) * spread),
        shift=float(center + loc * spread),
        loglik=float(-(res.fun if converged else start_nll) - log_jac),
        converged=converged,
        start_loglik=float(-start_nll - log_jac),
        n=int(x.size),
    )
