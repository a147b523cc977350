#!/usr/bin/env python3
"""Independent oracle for the STAR-vs-STD margin pinned in the acceptance suite.

Fits both regressions with plain ``np.linalg.lstsq`` (no package code) on the
seeded AR(1) series and prints the one-step test R2 gap. The acceptance test
pins this value minus 0.05 slack.
"""

import numpy as np


def calendar_one_hots(timestamps):
    hours = (timestamps // 3600) % 24
    dows = (timestamps // 86400 + 3) % 7  # epoch day 0 was a Thursday
    cols = [np.arange(len(timestamps), dtype=float)]  # trend
    for h in range(24):
        cols.append((hours == h).astype(float))
    for d in range(7):
        cols.append((dows == d).astype(float))
    cols.append(np.ones(len(timestamps)))  # intercept
    return np.column_stack(cols)


def r_squared(actual, predicted):
    sse = np.sum((actual - predicted) ** 2)
    sst = np.sum((actual - actual.mean()) ** 2)
    return 1.0 - sse / sst


def main():
    rng = np.random.default_rng(42)
    n = 2200
    y = np.empty(n)
    y[0] = 0.0
    eps = rng.normal(size=n)
    for i in range(1, n):
        y[i] = 0.9 * y[i - 1] + eps[i]
    ts = 1_577_836_800 + 3600 * np.arange(n, dtype=np.int64)

    train, test = slice(0, 2000), slice(2000, 2200)
    x = calendar_one_hots(ts)
    std_w, *_ = np.linalg.lstsq(x[train], y[train], rcond=None)
    std_pred = x[test] @ std_w

    x_star = np.column_stack([x[1:], y[:-1]])  # lag-1 block appended
    star_w, *_ = np.linalg.lstsq(x_star[:1999], y[1:2000], rcond=None)
    star_pred = x_star[1999:] @ star_w

    margin = r_squared(y[test], star_pred) - r_squared(y[test], std_pred)
    print(f"std  R2: {r_squared(y[test], std_pred):.6f}")
    print(f"star R2: {r_squared(y[test], star_pred):.6f}")
    print(f"margin : {margin!r}")


if __name__ == "__main__":
    main()
