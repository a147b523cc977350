"""Exponential smoothing family: simple (SES), Holt linear trend, and
Holt-Winters additive seasonal, with grid-search parameter selection."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

import numpy as np

from .errors import InsufficientDataError, UsageError
from .series import TimeSeries

KINDS = ("ses", "holt", "holt-winters")

# 0.0, 0.05, ..., 1.0
_LATTICE = np.round(np.arange(0, 21) * 0.05, 10)


@dataclass(frozen=True)
class SmoothingParams:
    alpha: float
    beta: float = 0.0
    gamma: float = 0.0
    period: int = 0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise UsageError(f"{name}={v} outside [0, 1]")
        if self.period and self.period < 2:
            raise UsageError("period must be >= 2 when present")


@dataclass(frozen=True)
class SmoothingState:
    """Level/trend/seasonal state after consuming ``step_index`` observations.

    ``seasonals[j]`` is the current estimate for phase ``j`` where an
    observation at (0-based) index ``i`` has phase ``i % period``.
    """

    level: float
    trend: float = 0.0
    seasonals: tuple[float, ...] = ()
    step_index: int = 0


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise UsageError(f"unknown smoothing kind {kind!r}; valid: {', '.join(KINDS)}")


def initial_state(train: TimeSeries, kind: str, period: int = 0) -> tuple[SmoothingState, int]:
    """Deterministic initialization; returns (state, index of first replayed point)."""
    y = train.values
    if kind == "ses":
        if len(y) < 2:
            raise InsufficientDataError("ses needs at least 2 points")
        return SmoothingState(level=float(y[0]), step_index=1), 1
    if kind == "holt":
        if len(y) < 2:
            raise InsufficientDataError("holt needs at least 2 points")
        return SmoothingState(level=float(y[0]), trend=float(y[1] - y[0]),
                              step_index=2), 2
    # holt-winters
    if period < 2:
        raise UsageError("holt-winters needs period >= 2")
    if len(y) < 2 * period:
        raise InsufficientDataError(
            f"holt-winters with period {period} needs at least {2 * period} points")
    m1 = float(np.mean(y[:period]))
    m2 = float(np.mean(y[period:2 * period]))
    seasonals = tuple(float(v) for v in (y[:period] - m1))
    return SmoothingState(level=m1, trend=(m2 - m1) / period,
                          seasonals=seasonals, step_index=0), 0


def predict_one(state: SmoothingState, kind: str, params: SmoothingParams) -> float:
    _check_kind(kind)
    if kind == "ses":
        return state.level
    if kind == "holt":
        return state.level + state.trend
    p = params.period
    return state.level + state.trend + state.seasonals[state.step_index % p]


def update_state(state: SmoothingState, kind: str, params: SmoothingParams,
                 observed: float) -> SmoothingState:
    _check_kind(kind)
    if not np.isfinite(observed):
        raise ValueError("observed value must be finite")
    a = params.alpha
    if kind == "ses":
        return replace(state, level=a * observed + (1 - a) * state.level,
                       step_index=state.step_index + 1)
    b = params.beta
    if kind == "holt":
        level = a * observed + (1 - a) * (state.level + state.trend)
        trend = b * (level - state.level) + (1 - b) * state.trend
        return replace(state, level=level, trend=trend,
                       step_index=state.step_index + 1)
    g = params.gamma
    p = params.period
    phase = state.step_index % p
    s_old = state.seasonals[phase]
    level = a * (observed - s_old) + (1 - a) * (state.level + state.trend)
    trend = b * (level - state.level) + (1 - b) * state.trend
    seasonals = list(state.seasonals)
    seasonals[phase] = g * (observed - level) + (1 - g) * s_old
    return SmoothingState(level=level, trend=trend, seasonals=tuple(seasonals),
                          step_index=state.step_index + 1)


def forecast_path(state: SmoothingState, kind: str, params: SmoothingParams,
                  horizon: int) -> np.ndarray:
    """Closed-form multi-step path; consistent with predict/update feedback."""
    _check_kind(kind)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    h = np.arange(1, horizon + 1, dtype=np.float64)
    if kind == "ses":
        return np.full(horizon, state.level)
    if kind == "holt":
        return state.level + h * state.trend
    p = params.period
    seas = np.asarray(state.seasonals)[(state.step_index + np.arange(horizon)) % p]
    return state.level + h * state.trend + seas


def _sse_grid(y: np.ndarray, kind: str, period: int) -> SmoothingParams:
    """Vectorized one-step-ahead SSE over the parameter lattice."""
    if kind == "ses":
        a = _LATTICE
        level = np.full_like(a, y[0])
        sse = np.zeros_like(a)
        for t in range(1, len(y)):
            err = y[t] - level
            sse += err * err
            level = a * y[t] + (1 - a) * level
        best = int(np.argmin(sse))
        return SmoothingParams(alpha=float(a[best]))
    if kind == "holt":
        a, b = (m.ravel() for m in np.meshgrid(_LATTICE, _LATTICE, indexing="ij"))
        level = np.full_like(a, y[0])
        trend = np.full_like(a, y[1] - y[0])
        sse = np.zeros_like(a)
        for t in range(2, len(y)):
            err = y[t] - (level + trend)
            sse += err * err
            new_level = a * y[t] + (1 - a) * (level + trend)
            trend = b * (new_level - level) + (1 - b) * trend
            level = new_level
        best = int(np.argmin(sse))
        return SmoothingParams(alpha=float(a[best]), beta=float(b[best]))
    # holt-winters
    a, b, g = (m.ravel() for m in
               np.meshgrid(_LATTICE, _LATTICE, _LATTICE, indexing="ij"))
    p = period
    m1 = float(np.mean(y[:p]))
    m2 = float(np.mean(y[p:2 * p]))
    level = np.full_like(a, m1)
    trend = np.full_like(a, (m2 - m1) / p)
    seas = np.tile(y[:p] - m1, (len(a), 1))
    sse = np.zeros_like(a)
    for t in range(len(y)):
        phase = t % p
        s_old = seas[:, phase]
        err = y[t] - (level + trend + s_old)
        if t >= p:  # one seasonal period of warm-up
            sse += err * err
        new_level = a * (y[t] - s_old) + (1 - a) * (level + trend)
        trend = b * (new_level - level) + (1 - b) * trend
        seas[:, phase] = g * (y[t] - new_level) + (1 - g) * s_old
        level = new_level
    best = int(np.argmin(sse))
    return SmoothingParams(alpha=float(a[best]), beta=float(b[best]),
                           gamma=float(g[best]), period=p)


def smoothing_fit(train: TimeSeries, kind: str,
                  params: SmoothingParams | None = None,
                  period: int | None = None) -> tuple[SmoothingParams, SmoothingState]:
    """Fit a smoothing model; selects parameters by lattice grid search when
    none are supplied.  Returns the state after consuming all of ``train``."""
    _check_kind(kind)
    if params is None:
        p = period or 0
        if kind == "holt-winters":
            if not p:
                raise UsageError("holt-winters requires a period")
            if len(train) < 2 * p:
                raise InsufficientDataError(
                    f"holt-winters with period {p} needs at least {2 * p} points")
        elif len(train) < 2:
            raise InsufficientDataError(f"{kind} needs at least 2 points")
        params = _sse_grid(train.values, kind, p)
    state, start = initial_state(train, kind, params.period)
    for t in range(start, len(train)):
        state = update_state(state, kind, params, float(train.values[t]))
    return params, state
