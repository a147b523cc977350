"""Single-step forecaster adapters behind one steppable contract.

Every adapter supports ``predict_one`` / ``update_with_value`` / ``clone`` so
the arbitrary-length generator can drive it.  Adapters with a closed-form
multi-step forecast also expose ``native_path``.  ``simulate_paths`` is an
optional vectorized fast path used by the bootstrap generator; it must agree
with the scalar predict/update loop.
"""

from __future__ import annotations

from typing import Protocol, runtime_checkable

import numpy as np

from . import regression, smoothing
from .regression import RegressionModel, TimeFeatureConfig, _design, _inverse, _transform
from .series import TimeSeries
from .smoothing import SmoothingParams, SmoothingState


@runtime_checkable
class SteppableForecaster(Protocol):
    def predict_one(self) -> float: ...
    def update_with_value(self, value: float) -> None: ...
    def clone(self) -> "SteppableForecaster": ...
    def training_start(self, train: TimeSeries) -> tuple["SteppableForecaster", int]: ...


class SmoothingForecaster:
    """SES / Holt / Holt-Winters behind the steppable contract."""

    def __init__(self, kind: str, params: SmoothingParams, state: SmoothingState):
        self.kind = kind
        self.params = params
        self.state = state
        # one seasonal period of residual warm-up for the seasonal model
        self.residual_warmup = params.period if kind == "holt-winters" else 0

    @classmethod
    def fit(cls, train: TimeSeries, kind: str,
            params: SmoothingParams | None = None,
            period: int | None = None) -> "SmoothingForecaster":
        params, state = smoothing.smoothing_fit(train, kind, params, period)
        return cls(kind, params, state)

    def predict_one(self) -> float:
        return smoothing.predict_one(self.state, self.kind, self.params)

    def update_with_value(self, value: float) -> None:
        self.state = smoothing.update_state(self.state, self.kind, self.params, value)

    def clone(self) -> "SmoothingForecaster":
        return SmoothingForecaster(self.kind, self.params, self.state)

    def training_start(self, train: TimeSeries) -> tuple["SmoothingForecaster", int]:
        state, start = smoothing.initial_state(train, self.kind, self.params.period)
        return SmoothingForecaster(self.kind, self.params, state), start

    def native_path(self, horizon: int) -> np.ndarray:
        return smoothing.forecast_path(self.state, self.kind, self.params, horizon)

    def simulate_paths(self, horizon: int, noise: np.ndarray) -> np.ndarray:
        n_scen = noise.shape[0]
        a = self.params.alpha
        level = np.full(n_scen, self.state.level)
        out = np.empty((n_scen, horizon))
        if self.kind == "ses":
            for h in range(horizon):
                val = level + noise[:, h]
                out[:, h] = val
                level = a * val + (1 - a) * level
            return out
        b = self.params.beta
        trend = np.full(n_scen, self.state.trend)
        if self.kind == "holt":
            for h in range(horizon):
                pred = level + trend
                val = pred + noise[:, h]
                out[:, h] = val
                new_level = a * val + (1 - a) * pred
                trend = b * (new_level - level) + (1 - b) * trend
                level = new_level
            return out
        g = self.params.gamma
        p = self.params.period
        seas = np.tile(np.asarray(self.state.seasonals), (n_scen, 1))
        for h in range(horizon):
            phase = (self.state.step_index + h) % p
            s_old = seas[:, phase]
            pred = level + trend + s_old
            val = pred + noise[:, h]
            out[:, h] = val
            new_level = a * (val - s_old) + (1 - a) * (level + trend)
            trend = b * (new_level - level) + (1 - b) * trend
            seas[:, phase] = g * (val - new_level) + (1 - g) * s_old
            level = new_level
        return out


class StdForecaster:
    """Pure function of time; updates only advance the clock."""

    def __init__(self, model: RegressionModel, next_ts: int, interval: int):
        if model.kind != "std":
            raise ValueError("StdForecaster needs a std model")
        self.model = model
        self.next_ts = next_ts
        self.interval = interval

    @classmethod
    def fit(cls, train: TimeSeries, config: TimeFeatureConfig | None,
            ridge_lambda: float = 1e-6, transform: str = "identity",
            use_trend: bool = True) -> "StdForecaster":
        model = regression.std_fit(train, config, ridge_lambda, transform, use_trend)
        return cls(model, int(train.timestamps[-1]) + train.interval, train.interval)

    def predict_one(self) -> float:
        return float(regression.std_predict(self.model, np.array([self.next_ts]))[0])

    def update_with_value(self, value: float) -> None:
        self.next_ts += self.interval

    def clone(self) -> "StdForecaster":
        return StdForecaster(self.model, self.next_ts, self.interval)

    def training_start(self, train: TimeSeries) -> tuple["StdForecaster", int]:
        return StdForecaster(self.model, int(train.timestamps[0]), self.interval), 0

    def _future_timestamps(self, horizon: int) -> np.ndarray:
        return self.next_ts + self.interval * np.arange(horizon, dtype=np.int64)

    def native_path(self, horizon: int) -> np.ndarray:
        return regression.std_predict(self.model, self._future_timestamps(horizon))

    def simulate_paths(self, horizon: int, noise: np.ndarray) -> np.ndarray:
        return self.native_path(horizon)[None, :] + noise


class StarForecaster:
    """STAR model plus the rolling window of its last ``aw`` observations."""

    def __init__(self, model: RegressionModel, window: np.ndarray,
                 next_ts: int, interval: int):
        if model.kind != "star":
            raise ValueError("StarForecaster needs a star model")
        self.model = model
        self.window = np.asarray(window, np.float64).copy()
        self.next_ts = next_ts
        self.interval = interval

    @classmethod
    def fit(cls, train: TimeSeries, config: TimeFeatureConfig | None, aw: int,
            ridge_lambda: float = 1e-6, transform: str = "identity",
            use_trend: bool = True) -> "StarForecaster":
        model = regression.star_fit(train, config, aw, ridge_lambda, transform,
                                    use_trend)
        return cls(model, train.values[-aw:],
                   int(train.timestamps[-1]) + train.interval, train.interval)

    def predict_one(self) -> float:
        return regression.star_predict_one(self.model, self.next_ts, self.window)

    def update_with_value(self, value: float) -> None:
        self.window = np.append(self.window[1:], value)
        self.next_ts += self.interval

    def clone(self) -> "StarForecaster":
        return StarForecaster(self.model, self.window, self.next_ts, self.interval)

    def training_start(self, train: TimeSeries) -> tuple["StarForecaster", int]:
        aw = self.model.aw
        return StarForecaster(self.model, train.values[:aw],
                              int(train.timestamps[aw]), self.interval), aw

    def simulate_paths(self, horizon: int, noise: np.ndarray) -> np.ndarray:
        m = self.model
        aw = m.aw
        n_scen = noise.shape[0]
        ts = self.next_ts + self.interval * np.arange(horizon, dtype=np.int64)
        w_time = m.weights[:len(m.weights) - aw]
        w_ar = m.weights[len(m.weights) - aw:]
        base = (_design(ts, m.config, m.origin, m.span, m.use_trend) @ w_time
                + m.intercept)
        windows = np.tile(_transform(self.window, m.transform), (n_scen, 1))
        out = np.empty((n_scen, horizon))
        for h in range(horizon):
            zhat = base[h] + windows @ w_ar
            pred = _inverse(zhat, m.transform)
            val = pred + noise[:, h]
            out[:, h] = val
            windows = np.hstack([windows[:, 1:],
                                 _transform(val, m.transform)[:, None]])
        return out
