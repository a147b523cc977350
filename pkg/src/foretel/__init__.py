"""Univariate time-series forecasting and benchmarking for telemetry data."""

from .series import HoldoutSplit, SynthSpec, TimeSeries, regularize, split_holdout, synth
from .smoothing import (SmoothingParams, SmoothingState, forecast_path,
                        predict_one, smoothing_fit, update_state)
from .regression import (RegressionModel, TimeFeatureConfig, ridge_solve,
                         star_fit, star_predict_one, std_fit, std_predict)
from .generator import (ForecastDistribution, ForecastResult, ResidualStore,
                        compute_residuals, generate, generate_deterministic, reduce)
from .metrics import log_r_squared, r_squared, timed
from .forecasters import SmoothingForecaster, StarForecaster, StdForecaster

__all__ = [
    "TimeSeries", "HoldoutSplit", "SynthSpec", "split_holdout", "regularize", "synth",
    "SmoothingParams", "SmoothingState", "smoothing_fit", "predict_one",
    "update_state", "forecast_path",
    "TimeFeatureConfig", "RegressionModel", "ridge_solve", "std_fit",
    "std_predict", "star_fit", "star_predict_one",
    "ResidualStore", "ForecastDistribution", "ForecastResult",
    "compute_residuals", "generate", "generate_deterministic", "reduce",
    "r_squared", "log_r_squared", "timed",
    "SmoothingForecaster", "StdForecaster", "StarForecaster",
]
