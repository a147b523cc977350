"""Trend + calendar-feature regression forecasters.

Two variants share one feature pipeline:

* ``std`` — linear regression on a scaled time index plus one-hot calendar
  features (hour of day, day of week, ...).
* ``star`` — ``std`` plus a block of the last ``aw`` observed values.

A single joint ridge regression is fit over the concatenated feature blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date

import numpy as np

from .errors import InsufficientDataError, SingularSystemError, UsageError
from .series import TimeSeries

GROUP_WIDTHS = {
    "hour-of-day": 24,
    "day-of-week": 7,
    "month-of-year": 12,
    "is-holiday": 2,
}
GROUP_ORDER = ("hour-of-day", "day-of-week", "month-of-year", "is-holiday")

TRANSFORMS = ("identity", "log1p")


@dataclass(frozen=True)
class TimeFeatureConfig:
    groups: tuple[str, ...] = ("hour-of-day", "day-of-week")
    holidays: frozenset = frozenset()  # datetime.date entries
    tz_offset: int = 0  # seconds east of UTC

    def __post_init__(self):
        if not self.groups:
            raise UsageError("at least one feature group must be enabled")
        for g in self.groups:
            if g not in GROUP_WIDTHS:
                raise UsageError(f"unknown feature group {g!r}")
        # canonical order, no duplicates
        object.__setattr__(self, "groups",
                           tuple(g for g in GROUP_ORDER if g in self.groups))


@dataclass(frozen=True)
class RegressionModel:
    kind: str  # "std" | "star"
    weights: np.ndarray
    intercept: float
    ridge_lambda: float
    config: TimeFeatureConfig | None
    aw: int
    transform: str
    origin: int  # first training timestamp
    span: int    # last minus first training timestamp
    use_trend: bool = True

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)
        if len(w) != feature_width(self.config, self.aw, self.use_trend):
            raise ValueError("weight vector does not match feature width")
        if (self.aw == 0) != (self.kind == "std"):
            raise ValueError("aw == 0 iff kind == 'std'")


def feature_width(config: TimeFeatureConfig | None, aw: int = 0,
                  use_trend: bool = True) -> int:
    w = 1 if use_trend else 0
    if config is not None:
        w += sum(GROUP_WIDTHS[g] for g in config.groups)
    return w + aw


def _transform(values: np.ndarray, transform: str) -> np.ndarray:
    if transform == "identity":
        return np.asarray(values, dtype=np.float64)
    if transform == "log1p":
        return np.log1p(np.maximum(values, 0.0))
    raise UsageError(f"unknown transform {transform!r}")


def _inverse(values: np.ndarray, transform: str):
    if transform == "identity":
        return values
    return np.expm1(values)


def _calendar_indices(timestamps: np.ndarray, config: TimeFeatureConfig) -> dict:
    """Per-group category index for each timestamp (vectorized, UTC+offset)."""
    local = np.asarray(timestamps, dtype=np.int64) + config.tz_offset
    out = {}
    if "hour-of-day" in config.groups:
        out["hour-of-day"] = (local // 3600) % 24
    if "day-of-week" in config.groups:
        # epoch day 0 (1970-01-01) was a Thursday; Monday = 0
        out["day-of-week"] = (local // 86400 + 3) % 7
    if "month-of-year" in config.groups:
        months = local.astype("datetime64[s]").astype("datetime64[M]")
        out["month-of-year"] = months.astype(np.int64) % 12
    if "is-holiday" in config.groups:
        days = local // 86400
        holiday_days = np.array(
            sorted((d - date(1970, 1, 1)).days for d in config.holidays),
            dtype=np.int64)
        is_hol = np.isin(days, holiday_days)
        out["is-holiday"] = is_hol.astype(np.int64)  # 0 = regular, 1 = holiday
    return out


def _design(timestamps: np.ndarray, config: TimeFeatureConfig | None,
            origin: int, span: int, use_trend: bool,
            lag_block: np.ndarray | None = None) -> np.ndarray:
    n = len(timestamps)
    cols = []
    if use_trend:
        cols.append(((np.asarray(timestamps, np.float64) - origin) / max(span, 1))
                    .reshape(n, 1))
    if config is not None:
        idx = _calendar_indices(np.asarray(timestamps, np.int64), config)
        for g in config.groups:
            block = np.zeros((n, GROUP_WIDTHS[g]))
            block[np.arange(n), idx[g]] = 1.0
            cols.append(block)
    if lag_block is not None:
        cols.append(lag_block)
    return np.hstack(cols) if cols else np.empty((n, 0))


def build_features(timestamp: int, config: TimeFeatureConfig | None,
                   origin: int, span: int, use_trend: bool = True,
                   recent_window: np.ndarray | None = None,
                   aw: int = 0) -> np.ndarray:
    """Feature vector for one timestamp: [trend | one-hot blocks | aw lags]."""
    if aw > 0:
        if recent_window is None or len(recent_window) != aw:
            raise ValueError(f"recent_window must have exactly {aw} entries")
        lag = np.asarray(recent_window, np.float64).reshape(1, aw)
    else:
        if recent_window is not None:
            raise ValueError("recent_window given but aw == 0")
        lag = None
    return _design(np.array([timestamp], np.int64), config, origin, span,
                   use_trend, lag)[0]


def ridge_solve(design: np.ndarray, targets: np.ndarray,
                ridge_lambda: float) -> tuple[np.ndarray, float]:
    """Minimize ||Xw + b - y||^2 + lambda ||w||^2, intercept unpenalized."""
    X = np.asarray(design, np.float64)
    y = np.asarray(targets, np.float64)
    if X.ndim != 2 or len(X) != len(y) or len(y) < 1:
        raise ValueError("design and targets shapes do not match")
    if ridge_lambda < 0:
        raise ValueError("ridge lambda must be >= 0")
    n, p = X.shape
    A = np.hstack([X, np.ones((n, 1))])
    if ridge_lambda == 0.0 and np.linalg.matrix_rank(A) < p + 1:
        raise SingularSystemError(
            "normal equations are singular at lambda=0; use lambda > 0")
    G = A.T @ A
    G[np.arange(p), np.arange(p)] += ridge_lambda
    try:
        sol = np.linalg.solve(G, A.T @ y)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(
            "normal equations are singular; use lambda > 0") from exc
    return sol[:p], float(sol[p])


def _check_fit_inputs(train: TimeSeries, width: int, extra: int = 0) -> None:
    if width == 0:
        raise UsageError("model has no features: enable trend, groups or lags")
    if len(train) < width + 1 + extra:
        raise InsufficientDataError(
            f"need at least {width + 1 + extra} points for {width} features")


def std_fit(train: TimeSeries, config: TimeFeatureConfig | None,
            ridge_lambda: float = 1e-6, transform: str = "identity",
            use_trend: bool = True) -> RegressionModel:
    width = feature_width(config, 0, use_trend)
    _check_fit_inputs(train, width)
    origin = int(train.timestamps[0])
    span = int(train.timestamps[-1] - train.timestamps[0])
    X = _design(train.timestamps, config, origin, span, use_trend)
    z = _transform(train.values, transform)
    w, b = ridge_solve(X, z, ridge_lambda)
    return RegressionModel(kind="std", weights=w, intercept=b,
                           ridge_lambda=ridge_lambda, config=config, aw=0,
                           transform=transform, origin=origin, span=span,
                           use_trend=use_trend)


def std_predict(model: RegressionModel, timestamps: np.ndarray) -> np.ndarray:
    if model.kind != "std":
        raise UsageError("std_predict requires a std model")
    X = _design(np.asarray(timestamps, np.int64), model.config, model.origin,
                model.span, model.use_trend)
    return _inverse(X @ model.weights + model.intercept, model.transform)


def star_fit(train: TimeSeries, config: TimeFeatureConfig | None, aw: int,
             ridge_lambda: float = 1e-6, transform: str = "identity",
             use_trend: bool = True) -> RegressionModel:
    if aw < 1:
        raise UsageError("star requires aw >= 1")
    width = feature_width(config, aw, use_trend)
    _check_fit_inputs(train, width, extra=aw)
    origin = int(train.timestamps[0])
    span = int(train.timestamps[-1] - train.timestamps[0])
    z = _transform(train.values, transform)
    # rows start at index aw; the first aw points are lag context only
    lags = np.lib.stride_tricks.sliding_window_view(z[:-1], aw)
    X = _design(train.timestamps[aw:], config, origin, span, use_trend, lags)
    w, b = ridge_solve(X, z[aw:], ridge_lambda)
    return RegressionModel(kind="star", weights=w, intercept=b,
                           ridge_lambda=ridge_lambda, config=config, aw=aw,
                           transform=transform, origin=origin, span=span,
                           use_trend=use_trend)


def star_predict_one(model: RegressionModel, timestamp: int,
                     recent_window: np.ndarray) -> float:
    """One-step prediction given the last ``aw`` observed values (oldest first)."""
    if model.kind != "star":
        raise UsageError("star_predict_one requires a star model")
    window = np.asarray(recent_window, np.float64)
    if len(window) != model.aw:
        raise ValueError(f"recent_window must have exactly {model.aw} entries")
    feats = build_features(timestamp, model.config, model.origin, model.span,
                           model.use_trend, _transform(window, model.transform),
                           model.aw)
    z = float(feats @ model.weights + model.intercept)
    return float(_inverse(np.array(z), model.transform))
