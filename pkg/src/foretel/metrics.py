"""Evaluation metrics: R-squared, R-squared on logarithms, wall-clock timing."""

from __future__ import annotations

import time

import numpy as np

from .errors import DegenerateTargetError

DEFAULT_LOG_EPSILON = 1e-9


def r_squared(actual, predicted) -> float:
    """1 - SSE/SST with SST about the mean of ``actual``."""
    a = np.asarray(actual, np.float64)
    p = np.asarray(predicted, np.float64)
    if a.shape != p.shape or a.ndim != 1 or len(a) == 0:
        raise ValueError("actual and predicted must be equal-length 1-d arrays")
    sst = float(np.sum((a - a.mean()) ** 2))
    if sst == 0.0:
        raise DegenerateTargetError("actual values have zero variance")
    sse = float(np.sum((a - p) ** 2))
    return 1.0 - sse / sst


def log_r_squared(actual, predicted, epsilon: float = DEFAULT_LOG_EPSILON) -> float:
    """R-squared of element-wise clamped logarithms; main traffic metric."""
    if epsilon <= 0:
        raise ValueError("epsilon must be > 0")
    a = np.log(np.maximum(np.asarray(actual, np.float64), epsilon))
    p = np.log(np.maximum(np.asarray(predicted, np.float64), epsilon))
    return r_squared(a, p)


def timed(run):
    """Run a zero-argument procedure, returning (result, wall seconds)."""
    t0 = time.perf_counter()
    result = run()
    return result, time.perf_counter() - t0
