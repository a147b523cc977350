"""Core time-series value type, holdout splitting, grid regularization and
synthetic dataset archetypes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GapError, GridAmbiguityError, InvalidSplitError, UsageError

ARCHETYPES = (
    "noisy-levels",
    "daily-seasonal",
    "growing-seasonal",
    "global-concentrated",
)

# 2020-01-01 00:00:00 UTC; fixed so synthetic series are reproducible.
DEFAULT_START = 1_577_836_800

GAP_POLICIES = ("forward-fill", "linear-interpolate", "error")


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled univariate series with integer epoch-second timestamps.

    ``interval`` is the nominal sampling period.  Raw ingested series may be
    irregular; ``regularize`` produces a series that is exactly uniform.
    """

    timestamps: np.ndarray
    values: np.ndarray
    interval: int

    def __post_init__(self):
        ts = np.asarray(self.timestamps, dtype=np.int64)
        vals = np.asarray(self.values, dtype=np.float64)
        if ts.ndim != 1 or vals.ndim != 1:
            raise ValueError("timestamps and values must be 1-d")
        if len(ts) != len(vals) or len(ts) < 1:
            raise ValueError("timestamps and values must have equal length >= 1")
        if len(ts) > 1 and not np.all(np.diff(ts) > 0):
            raise ValueError("timestamps must be strictly increasing")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        if self.interval <= 0:
            raise ValueError("interval must be positive")
        ts.flags.writeable = False
        vals.flags.writeable = False
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def is_uniform(self) -> bool:
        return len(self) < 2 or bool(np.all(np.diff(self.timestamps) == self.interval))

    def slice(self, start: int, stop: int) -> "TimeSeries":
        return TimeSeries(self.timestamps[start:stop].copy(),
                          self.values[start:stop].copy(), self.interval)


@dataclass(frozen=True)
class HoldoutSplit:
    train: TimeSeries
    test: TimeSeries


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for one synthetic telemetry archetype."""

    archetype: str
    length: int
    interval: int = 3600
    noise_scale: float = 0.1
    seed: int = 0
    start: int = DEFAULT_START

    def __post_init__(self):
        if self.archetype not in ARCHETYPES:
            raise UsageError(f"unknown archetype {self.archetype!r}; "
                             f"valid: {', '.join(ARCHETYPES)}")
        if self.interval <= 0:
            raise UsageError("interval must be positive")
        if self.noise_scale < 0:
            raise UsageError("noise-scale must be >= 0")
        period = self.seasonal_period
        if self.length < 2 * period:
            raise UsageError(
                f"length {self.length} must be >= 2x the seasonal period "
                f"({period}) implied by archetype {self.archetype!r}")

    @property
    def seasonal_period(self) -> int:
        if self.archetype == "noisy-levels":
            return max(2, round(3600 / self.interval))
        return max(2, round(86400 / self.interval))


def split_holdout(series: TimeSeries, n_test: int) -> HoldoutSplit:
    """Reserve the last ``n_test`` points for evaluation."""
    if not 1 <= n_test < len(series):
        raise InvalidSplitError(
            f"n_test={n_test} must be in [1, {len(series) - 1}]")
    cut = len(series) - n_test
    return HoldoutSplit(train=series.slice(0, cut), test=series.slice(cut, len(series)))


def concat(a: TimeSeries, b: TimeSeries) -> TimeSeries:
    return TimeSeries(np.concatenate([a.timestamps, b.timestamps]),
                      np.concatenate([a.values, b.values]), a.interval)


def regularize(series: TimeSeries, interval: int,
               gap_policy: str = "linear-interpolate") -> TimeSeries:
    """Snap a series onto a uniform grid from its first to last timestamp.

    Existing points go to the nearest grid slot; empty slots are filled
    according to ``gap_policy``.
    """
    if gap_policy not in GAP_POLICIES:
        raise UsageError(f"unknown gap_policy {gap_policy!r}")
    if interval <= 0:
        raise ValueError("interval must be positive")
    t0 = int(series.timestamps[0])
    slots = np.rint((series.timestamps - t0) / interval).astype(np.int64)
    if len(np.unique(slots)) != len(slots):
        dup = slots[np.where(np.diff(slots) == 0)[0][0]]
        raise GridAmbiguityError(
            f"two source points snap to grid slot t={t0 + dup * interval}")
    n_slots = int(slots[-1]) + 1
    grid_ts = t0 + interval * np.arange(n_slots, dtype=np.int64)
    filled = np.zeros(n_slots, dtype=bool)
    filled[slots] = True
    out = np.empty(n_slots, dtype=np.float64)
    out[slots] = series.values
    if not filled.all():
        missing = np.where(~filled)[0]
        if gap_policy == "error":
            raise GapError(f"gap at t={t0 + int(missing[0]) * interval}")
        if gap_policy == "forward-fill":
            # index of the most recent filled slot at or before each position
            last = np.maximum.accumulate(np.where(filled, np.arange(n_slots), -1))
            out[missing] = out[last[missing]]
        else:  # linear-interpolate
            out[missing] = np.interp(missing, slots, series.values)
    return TimeSeries(grid_ts, out, interval)


def _daily_profile(phase: np.ndarray) -> np.ndarray:
    """Smooth sleep-work-evening shape over one cycle; phase in [0, 1)."""
    return (np.sin(2 * np.pi * phase - np.pi / 2)
            + 0.4 * np.sin(4 * np.pi * phase + 0.8))


def synth(spec: SynthSpec) -> TimeSeries:
    """Generate one synthetic archetype series, deterministic per seed."""
    rng = np.random.default_rng(spec.seed)
    n = spec.length
    period = spec.seasonal_period
    idx = np.arange(n)
    phase = (idx % period) / period
    ts = spec.start + spec.interval * idx.astype(np.int64)

    if spec.archetype == "daily-seasonal":
        amp = 40.0
        vals = 100.0 + amp * _daily_profile(phase)
        vals = vals + rng.normal(0.0, spec.noise_scale * amp, size=n)
    elif spec.archetype == "noisy-levels":
        levels = np.array([50.0, 120.0, 300.0, 800.0])
        # piecewise-constant base level, segments a few periods long
        base = np.empty(n)
        pos = 0
        while pos < n:
            length = int(rng.integers(2 * period, 8 * period))
            base[pos:pos + length] = levels[int(rng.integers(len(levels)))]
            pos += length
        hourly = 10.0 * np.sin(2 * np.pi * phase)  # slight hourly seasonality
        vals = base + hourly + rng.normal(0.0, spec.noise_scale * 50.0, size=n)
    elif spec.archetype == "growing-seasonal":
        growth = np.log(3.0) / max(n - 1, 1)  # ~3x over the series
        amp = 0.35
        base = 100.0 * np.exp(growth * idx) * (1.0 + amp * _daily_profile(phase))
        vals = base * (1.0 + spec.noise_scale * rng.normal(0.0, 1.0, size=n))
    else:  # global-concentrated
        weights = (0.55, 0.25, 0.20)
        shifts = (0.0, 1.0 / 3.0, 2.0 / 3.0)
        amp = 40.0
        vals = np.zeros(n)
        for w, s in zip(weights, shifts):
            vals += w * (100.0 + amp * _daily_profile((phase + s) % 1.0))
        vals = vals + rng.normal(0.0, spec.noise_scale * amp, size=n)

    return TimeSeries(ts, vals, spec.interval)
