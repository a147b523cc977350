"""Arbitrary-length probabilistic forecasts from any single-step forecaster.

Each scenario replays the forecaster stepwise, adding a residual resampled
from the in-sample one-step errors and feeding the noisy value back.  Point
forecasts and confidence bands are per-step reductions over the scenario
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientDataError
from .series import TimeSeries

DEFAULT_SCENARIOS = 200
DEFAULT_QUANTILES = (0.05, 0.25, 0.75, 0.95)


@dataclass(frozen=True)
class ResidualStore:
    residuals: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.residuals, np.float64)
        if r.ndim != 1 or len(r) == 0 or not np.all(np.isfinite(r)):
            raise ValueError("residuals must be a nonempty finite 1-d array")
        r.flags.writeable = False
        object.__setattr__(self, "residuals", r)


@dataclass(frozen=True)
class ForecastDistribution:
    scenarios: np.ndarray  # (n_scenarios, horizon)
    horizon: int
    seed: int

    def __post_init__(self):
        s = np.asarray(self.scenarios, np.float64)
        if s.ndim != 2 or s.shape[1] != self.horizon:
            raise ValueError("scenarios must be (n_scenarios, horizon)")
        if not np.all(np.isfinite(s)):
            raise ValueError("scenario entries must be finite")
        s.flags.writeable = False
        object.__setattr__(self, "scenarios", s)


@dataclass(frozen=True)
class ForecastResult:
    point: np.ndarray
    bands: dict = field(default_factory=dict)  # quantile level -> values


def compute_residuals(forecaster, train: TimeSeries) -> ResidualStore:
    """In-sample one-step-ahead errors, replayed from the start of training.

    The forecaster's declared warm-up prefix (``residual_warmup``) is updated
    through but not collected.
    """
    replay, start = forecaster.training_start(train)
    warmup = getattr(replay, "residual_warmup", 0)
    residuals = []
    for i in range(start, len(train)):
        pred = replay.predict_one()
        y = float(train.values[i])
        if i >= start + warmup:
            residuals.append(y - pred)
        replay.update_with_value(y)
    if not residuals:
        raise InsufficientDataError("no residuals left after warm-up")
    return ResidualStore(np.asarray(residuals))


def _draw_noise(residuals: ResidualStore, horizon: int, n_scenarios: int,
                seed: int) -> np.ndarray:
    """Residual draws per scenario, each from its own sub-seeded stream so the
    result is independent of scenario execution order."""
    pool = residuals.residuals
    noise = np.empty((n_scenarios, horizon))
    for b in range(n_scenarios):
        rng = np.random.default_rng(seed ^ b)
        noise[b] = pool[rng.integers(0, len(pool), size=horizon)]
    return noise


def generate(forecaster, residuals: ResidualStore, horizon: int,
             n_scenarios: int = DEFAULT_SCENARIOS, seed: int = 0) -> ForecastDistribution:
    """Simulate bootstrapped stepwise futures from the forecaster's current state."""
    if horizon < 1 or n_scenarios < 1:
        raise ValueError("horizon and n_scenarios must be >= 1")
    noise = _draw_noise(residuals, horizon, n_scenarios, seed)
    if hasattr(forecaster, "simulate_paths"):
        scenarios = forecaster.simulate_paths(horizon, noise)
    else:
        scenarios = np.empty((n_scenarios, horizon))
        for b in range(n_scenarios):
            f = forecaster.clone()
            for h in range(horizon):
                value = f.predict_one() + noise[b, h]
                scenarios[b, h] = value
                f.update_with_value(value)
    return ForecastDistribution(scenarios, horizon, seed)


def generate_deterministic(forecaster, horizon: int) -> ForecastDistribution:
    """Single closed-form path for forecasters with a native multi-step
    forecast; every bootstrapped sample is conceptually that same path."""
    path = forecaster.native_path(horizon)
    return ForecastDistribution(np.asarray(path)[None, :], horizon, seed=0)


def reduce(dist: ForecastDistribution, quantile_levels=DEFAULT_QUANTILES,
           point: str = "mean") -> ForecastResult:
    """Collapse scenarios to a point forecast and empirical quantile bands."""
    levels = tuple(quantile_levels)
    if not levels:
        raise ValueError("quantile_levels must be nonempty")
    if any(not 0.0 < q < 1.0 for q in levels):
        raise ValueError("quantile levels must lie in (0, 1)")
    if point == "mean":
        pt = dist.scenarios.mean(axis=0)
    elif point == "median":
        pt = np.median(dist.scenarios, axis=0)
    else:
        raise ValueError("point must be 'mean' or 'median'")
    bands = {q: np.quantile(dist.scenarios, q, axis=0, method="linear")
             for q in sorted(levels)}
    return ForecastResult(point=pt, bands=bands)
