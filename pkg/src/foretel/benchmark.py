"""Dataset ingestion, benchmark protocol and report rendering.

Protocol per (dataset, holdout): split the trailing holdout off, sweep each
model's hyperparameter grid on the training segment, generate a forecast of
horizon == holdout, and keep the grid point with the best log-R2 on the test
segment (the published-table selection rule, which peeks at the test set).  A
second, honestly selected column set picks the grid point by log-R2 on the
last 10% of the training segment instead and is reported alongside.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import generator, metrics, series
from .errors import InsufficientDataError, ParseError, UsageError
from .forecasters import SmoothingForecaster, StarForecaster, StdForecaster
from .regression import TimeFeatureConfig
from .series import SynthSpec, TimeSeries, regularize, split_holdout

MODEL_NAMES = ("ses", "holt", "hwes", "std", "star")

DEFAULT_GRIDS = {
    "ses": {},
    "holt": {},
    "hwes": {},
    "std": {"ridge_lambda": [1e-6, 1e-2], "transform": ["identity", "log1p"]},
    "star": {"aw": [4, 12, 24, 48], "ridge_lambda": [1e-6, 1e-2],
             "transform": ["identity", "log1p"]},
}

REPORT_FORMATS = ("aligned-table", "comma-separated", "json-lines")


@dataclass(frozen=True)
class DatasetSpec:
    name: str
    path: str | None = None
    synth: SynthSpec | None = None
    timestamp_column: str = "timestamp"
    value_column: str = "value"
    interval: int = 3600
    aggregation: str = "none"  # none | sum | mean
    aggregation_window: int = 0
    gap_policy: str = "linear-interpolate"
    seasonal_period: int | None = None

    def __post_init__(self):
        if (self.path is None) == (self.synth is None):
            raise UsageError(f"dataset {self.name!r}: exactly one of path/synth required")
        if self.aggregation not in ("none", "sum", "mean"):
            raise UsageError(f"unknown aggregation {self.aggregation!r}")
        if self.aggregation != "none" and self.aggregation_window <= 0:
            raise UsageError("aggregation requires a positive window")

    @property
    def period(self) -> int:
        if self.seasonal_period:
            return self.seasonal_period
        return max(2, round(86400 / max(1, self.interval)))


@dataclass(frozen=True)
class ModelSpec:
    name: str
    grid: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in MODEL_NAMES:
            raise UsageError(f"unknown model {self.name!r}; valid: {', '.join(MODEL_NAMES)}")

    def grid_points(self) -> list[dict]:
        grid = self.grid or DEFAULT_GRIDS[self.name]
        if not grid:
            return [{}]
        keys = sorted(grid)
        return [dict(zip(keys, combo))
                for combo in itertools.product(*(grid[k] for k in keys))]


@dataclass(frozen=True)
class BenchmarkConfig:
    datasets: tuple
    models: tuple
    holdouts: tuple = (1000, 5000)
    holdout_overrides: dict = field(default_factory=dict)  # name -> {holdout: new}
    scenarios: int = generator.DEFAULT_SCENARIOS
    seed: int = 0
    quantile_levels: tuple = generator.DEFAULT_QUANTILES


@dataclass
class BenchmarkRow:
    model: str
    dataset: str
    holdout: int
    rt_s: float | None = None
    r2: float | None = None
    lr2: float | None = None
    params: dict = field(default_factory=dict)
    honest_r2: float | None = None
    honest_lr2: float | None = None
    honest_params: dict = field(default_factory=dict)
    error: str | None = None


@dataclass
class BenchmarkReport:
    rows: list


def _parse_timestamp(text: str) -> int:
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        dt = datetime.strptime(text, "%Y-%m-%d %H:%M:%S")
    except ValueError as exc:
        raise ValueError(f"unparseable timestamp {text!r}") from exc
    return int(dt.replace(tzinfo=timezone.utc).timestamp())


def _aggregate(ts: np.ndarray, vals: np.ndarray, how: str,
               window: int) -> tuple[np.ndarray, np.ndarray]:
    buckets = (ts // window) * window
    uniq, inverse = np.unique(buckets, return_inverse=True)
    sums = np.zeros(len(uniq))
    np.add.at(sums, inverse, vals)
    if how == "mean":
        counts = np.bincount(inverse, minlength=len(uniq))
        sums = sums / counts
    return uniq, sums


def load_dataset(spec: DatasetSpec) -> TimeSeries:
    """Resolve a dataset spec to a uniform TimeSeries."""
    if spec.synth is not None:
        return series.synth(spec.synth)
    rows_ts, rows_val = [], []
    try:
        with open(spec.path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise ParseError(f"{spec.path}: empty file") from None
            header = [h.strip() for h in header]
            try:
                ts_col = header.index(spec.timestamp_column)
                val_col = header.index(spec.value_column)
            except ValueError:
                raise ParseError(
                    f"{spec.path}: columns {spec.timestamp_column!r}/"
                    f"{spec.value_column!r} not found in header {header}") from None
            for lineno, row in enumerate(reader, start=2):
                if not row or all(not c.strip() for c in row):
                    continue
                try:
                    rows_ts.append(_parse_timestamp(row[ts_col]))
                    rows_val.append(float(row[val_col]))
                except (ValueError, IndexError) as exc:
                    raise ParseError(f"{spec.path}:{lineno}: {exc}") from None
    except OSError as exc:
        raise ParseError(f"{spec.path}: {exc}") from None
    if not rows_ts:
        raise ParseError(f"{spec.path}: no data rows")
    ts = np.asarray(rows_ts, np.int64)
    vals = np.asarray(rows_val, np.float64)
    order = np.argsort(ts, kind="stable")
    ts, vals = ts[order], vals[order]
    if spec.aggregation != "none":
        ts, vals = _aggregate(ts, vals, spec.aggregation, spec.aggregation_window)
    interval = spec.interval
    if interval <= 0:  # infer the sampling period from the raw spacing
        diffs = np.diff(ts)
        interval = int(np.median(diffs)) if len(diffs) else 3600
        interval = max(1, interval)
    raw = TimeSeries(ts, vals, interval)
    return regularize(raw, interval, spec.gap_policy)


def save_series(ts: TimeSeries, path: str) -> None:
    """Write a series in the ingestion format (epoch seconds, header row)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["timestamp", "value"])
        for t, v in zip(ts.timestamps, ts.values):
            writer.writerow([int(t), repr(float(v))])


def default_feature_config(train: TimeSeries) -> TimeFeatureConfig:
    """hour-of-day + day-of-week; month-of-year once the span covers >= 60 days."""
    span = int(train.timestamps[-1] - train.timestamps[0])
    groups = ["hour-of-day", "day-of-week"]
    if span >= 60 * 86400:
        groups.append("month-of-year")
    return TimeFeatureConfig(groups=tuple(groups))


def fit_forecaster(name: str, train: TimeSeries, point: dict, period: int):
    """Build the forecaster for one model name and grid point."""
    if name == "ses":
        return SmoothingForecaster.fit(train, "ses")
    if name == "holt":
        return SmoothingForecaster.fit(train, "holt")
    if name == "hwes":
        return SmoothingForecaster.fit(train, "holt-winters",
                                       period=point.get("period", period))
    config = default_feature_config(train)
    lam = point.get("ridge_lambda", 1e-6)
    transform = point.get("transform", "identity")
    if name == "std":
        return StdForecaster.fit(train, config, lam, transform)
    if name == "star":
        return StarForecaster.fit(train, config, point.get("aw", 24), lam, transform)
    raise UsageError(f"unknown model {name!r}")


def forecast_point(forecaster, train: TimeSeries, horizon: int,
                   scenarios: int, seed: int) -> np.ndarray:
    """Point forecast of the given horizon; closed-form path when available,
    otherwise the mean of bootstrapped stepwise scenarios."""
    if hasattr(forecaster, "native_path"):
        dist = generator.generate_deterministic(forecaster, horizon)
    else:
        residuals = generator.compute_residuals(forecaster, train)
        dist = generator.generate(forecaster, residuals, horizon, scenarios, seed)
    return generator.reduce(dist, (0.25, 0.75)).point


def _score(test_values: np.ndarray, point: np.ndarray) -> tuple[float | None, float | None]:
    try:
        r2 = metrics.r_squared(test_values, point)
    except Exception:
        r2 = None
    try:
        lr2 = metrics.log_r_squared(test_values, point)
    except Exception:
        lr2 = None
    return r2, lr2


def _selection_key(lr2, r2):
    if lr2 is not None and math.isfinite(lr2):
        return lr2
    if r2 is not None and math.isfinite(r2):
        return r2 - 1e6  # de-prioritize rows without a log score
    return -math.inf


def _run_one(name: str, point: dict, train: TimeSeries, test: TimeSeries,
             period: int, scenarios: int, seed: int):
    forecaster = fit_forecaster(name, train, point, period)
    pred = forecast_point(forecaster, train, len(test), scenarios, seed)
    return _score(test.values, pred)


def _sweep_model(model: ModelSpec, train: TimeSeries, test: TimeSeries,
                 period: int, config: BenchmarkConfig) -> BenchmarkRow:
    results = []
    n_val = max(1, len(train) // 10)
    for point in model.grid_points():
        r2, lr2 = _run_one(model.name, point, train, test, period,
                           config.scenarios, config.seed)
        try:
            val_split = split_holdout(train, n_val)
            val_r2, val_lr2 = _run_one(model.name, point, val_split.train,
                                       val_split.test, period,
                                       config.scenarios, config.seed)
        except Exception:
            val_r2 = val_lr2 = None
        results.append((point, r2, lr2, _selection_key(val_lr2, val_r2)))
    winner = max(results, key=lambda r: _selection_key(r[2], r[1]))
    honest = max(results, key=lambda r: r[3])
    # time the winning configuration's full pipeline
    _, rt = metrics.timed(lambda: _run_one(model.name, winner[0], train, test,
                                           period, config.scenarios, config.seed))
    return BenchmarkRow(model=model.name, dataset="", holdout=len(test),
                        rt_s=rt, r2=winner[1], lr2=winner[2], params=winner[0],
                        honest_r2=honest[1], honest_lr2=honest[2],
                        honest_params=honest[0])


def resolved_holdouts(config: BenchmarkConfig, dataset_name: str) -> list[int]:
    overrides = config.holdout_overrides.get(dataset_name, {})
    return [int(overrides.get(h, overrides.get(str(h), h))) for h in config.holdouts]


def run_benchmark(config: BenchmarkConfig) -> BenchmarkReport:
    """One row per (model, dataset, holdout); row failures never abort the run."""
    rows = []
    for ds in config.datasets:
        try:
            data = load_dataset(ds)
            load_error = None
        except Exception as exc:
            data, load_error = None, str(exc)
        for holdout in resolved_holdouts(config, ds.name):
            for model in config.models:
                if load_error is not None:
                    rows.append(BenchmarkRow(model=model.name, dataset=ds.name,
                                             holdout=holdout, error=load_error))
                    continue
                try:
                    split = split_holdout(data, holdout)
                    row = _sweep_model(model, split.train, split.test,
                                       ds.period, config)
                    row.dataset = ds.name
                    row.holdout = holdout
                except Exception as exc:
                    row = BenchmarkRow(model=model.name, dataset=ds.name,
                                       holdout=holdout, error=str(exc))
                rows.append(row)
    return BenchmarkReport(rows=rows)


def _row_dict(row: BenchmarkRow) -> dict:
    return {
        "model": row.model, "dataset": row.dataset, "holdout": row.holdout,
        "rt_s": row.rt_s, "r2": row.r2, "lr2": row.lr2, "params": row.params,
        "honest_r2": row.honest_r2, "honest_lr2": row.honest_lr2,
        "honest_params": row.honest_params, "error": row.error,
    }


def parse_report(text: str) -> BenchmarkReport:
    """Inverse of the json-lines rendering."""
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        rows.append(BenchmarkRow(**d))
    return BenchmarkReport(rows=rows)


def _fmt(value, best=False) -> str:
    if value is None:
        return "-"
    text = f"{value:.2f}"
    return text + "*" if best else text


def _render_table(report: BenchmarkReport) -> str:
    out = io.StringIO()
    datasets = []
    for row in report.rows:
        if row.dataset not in datasets:
            datasets.append(row.dataset)
    for ds in datasets:
        ds_rows = [r for r in report.rows if r.dataset == ds]
        holdouts = sorted({r.holdout for r in ds_rows})
        models = []
        for r in ds_rows:
            if r.model not in models:
                models.append(r.model)
        out.write(f"dataset: {ds}\n")
        header = ["model"]
        for h in holdouts:
            header += [f"RT(s)@{h}", f"R2@{h}", f"lR2@{h}",
                       f"hR2@{h}", f"hlR2@{h}"]
        table = [header]
        # best per column: min runtime, max scores
        best = {}
        for h in holdouts:
            cell = {r.model: r for r in ds_rows if r.holdout == h}
            for key, pick in (("rt_s", min), ("r2", max), ("lr2", max),
                              ("honest_r2", max), ("honest_lr2", max)):
                vals = [getattr(r, key) for r in cell.values()
                        if getattr(r, key) is not None]
                best[(h, key)] = pick(vals) if vals else None
        for m in models:
            line = [m]
            for h in holdouts:
                row = next((r for r in ds_rows if r.model == m and r.holdout == h), None)
                if row is None:
                    line += ["-"] * 5
                elif row.error is not None:
                    line += ["ERR"] * 5
                else:
                    for key in ("rt_s", "r2", "lr2", "honest_r2", "honest_lr2"):
                        v = getattr(row, key)
                        line.append(_fmt(v, best=v is not None and v == best[(h, key)]))
            table.append(line)
        widths = [max(len(r[i]) for r in table) for i in range(len(header))]
        for r in table:
            out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
        errors = [r for r in ds_rows if r.error is not None]
        for r in errors:
            out.write(f"  error [{r.model}@{r.holdout}]: {r.error}\n")
        out.write("\n")
    if not datasets:
        out.write("model  RT(s)  R2  lR2\n")
    return out.getvalue()


def render_report(report: BenchmarkReport, fmt: str = "aligned-table") -> str:
    if fmt == "json-lines":
        return "\n".join(json.dumps(_row_dict(r)) for r in report.rows) + "\n"
    if fmt == "comma-separated":
        out = io.StringIO()
        writer = csv.writer(out)
        fields = ["model", "dataset", "holdout", "rt_s", "r2", "lr2",
                  "honest_r2", "honest_lr2", "params", "honest_params", "error"]
        writer.writerow(fields)
        for row in report.rows:
            d = _row_dict(row)
            d["params"] = json.dumps(d["params"])
            d["honest_params"] = json.dumps(d["honest_params"])
            writer.writerow([d[f] if d[f] is not None else "" for f in fields])
        return out.getvalue()
    if fmt == "aligned-table":
        return _render_table(report)
    raise UsageError(f"unknown report format {fmt!r}; valid: {', '.join(REPORT_FORMATS)}")


def load_config(path: str) -> BenchmarkConfig:
    """Parse the declarative benchmark configuration (JSON document)."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid config {path}: {exc}") from None
    return config_from_dict(doc)


def config_from_dict(doc: dict) -> BenchmarkConfig:
    datasets = []
    for d in doc.get("datasets", []):
        d = dict(d)
        if "synth" in d and d["synth"] is not None:
            d["synth"] = SynthSpec(**d["synth"])
        datasets.append(DatasetSpec(**d))
    models = tuple(ModelSpec(m["name"], m.get("grid", {}))
                   for m in doc.get("models", []))
    if not datasets or not models:
        raise UsageError("config needs at least one dataset and one model")
    kwargs = {}
    for key in ("holdouts", "scenarios", "seed", "quantile_levels"):
        if key in doc:
            kwargs[key] = tuple(doc[key]) if key in ("holdouts", "quantile_levels") else doc[key]
    overrides = {name: {int(k): int(v) for k, v in table.items()}
                 for name, table in doc.get("holdout_overrides", {}).items()}
    return BenchmarkConfig(datasets=tuple(datasets), models=models,
                           holdout_overrides=overrides, **kwargs)
