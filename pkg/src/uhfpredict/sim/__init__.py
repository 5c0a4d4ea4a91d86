"""Simulators of trade signs and prices used to check the tests against known mechanisms."""

from .base import SimOutput, config_from_dict, config_to_json, load_config
from .decay import (
    is_non_increasing,
    predictability_decay,
    price_predictable,
    run_ensemble,
    sign_predictable,
    smoothed,
)
from .lambda_model import LambdaModelConfig, pareto_sizes, simulate_lambda
from .od_model import OdModelConfig, simulate_od
from .ts_model import TsModelConfig, impact_path, propagator, simulate_ts

MODELS = {
    "lambda": (LambdaModelConfig, simulate_lambda),
    "od": (OdModelConfig, simulate_od),
    "ts": (TsModelConfig, simulate_ts),
}

__all__ = [
    "MODELS",
    "LambdaModelConfig",
    "OdModelConfig",
    "SimOutput",
    "TsModelConfig",
    "config_from_dict",
    "config_to_json",
    "impact_path",
    "is_non_increasing",
    "load_config",
    "pareto_sizes",
    "predictability_decay",
    "price_predictable",
    "propagator",
    "run_ensemble",
    "sign_predictable",
    "simulate_lambda",
    "simulate_od",
    "simulate_ts",
    "smoothed",
]
