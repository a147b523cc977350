"""Batch command-line interface: forecast, bench, synth, report."""

from __future__ import annotations

import argparse
import csv
import sys

from . import benchmark, generator
from .benchmark import (DatasetSpec, MODEL_NAMES, REPORT_FORMATS,
                        default_feature_config, load_config, load_dataset,
                        parse_report, render_report, run_benchmark, save_series)
from .errors import ForetelError, UsageError
from .forecasters import SmoothingForecaster, StarForecaster, StdForecaster
from .series import ARCHETYPES, SynthSpec, synth
from .smoothing import SmoothingParams


def _parse_quantiles(text: str) -> tuple:
    try:
        levels = tuple(float(q) for q in text.split(","))
    except ValueError:
        raise UsageError(f"bad quantile list {text!r}") from None
    if not levels or any(not 0.0 < q < 1.0 for q in levels):
        raise UsageError("quantile levels must lie in (0, 1)")
    return levels


def _fit_cli_forecaster(args, train):
    period = args.period or max(2, round(86400 / train.interval))
    params = None
    if args.alpha is not None:
        params = SmoothingParams(alpha=args.alpha, beta=args.beta or 0.0,
                                 gamma=args.gamma or 0.0,
                                 period=period if args.model == "hwes" else 0)
    if args.model == "ses":
        return SmoothingForecaster.fit(train, "ses", params)
    if args.model == "holt":
        return SmoothingForecaster.fit(train, "holt", params)
    if args.model == "hwes":
        return SmoothingForecaster.fit(train, "holt-winters", params, period=period)
    config = default_feature_config(train)
    if args.model == "std":
        return StdForecaster.fit(train, config, args.ridge_lambda, args.transform)
    return StarForecaster.fit(train, config, args.aw, args.ridge_lambda,
                              args.transform)


def cmd_forecast(args) -> int:
    spec = DatasetSpec(name="input", path=args.input,
                       timestamp_column=args.timestamp_column,
                       value_column=args.value_column,
                       interval=args.interval)  # 0 = infer from raw spacing
    train = load_dataset(spec)
    forecaster = _fit_cli_forecaster(args, train)
    levels = _parse_quantiles(args.quantiles)
    residuals = generator.compute_residuals(forecaster, train)
    dist = generator.generate(forecaster, residuals, args.horizon,
                              args.scenarios, args.seed)
    result = generator.reduce(dist, levels)
    start = int(train.timestamps[-1]) + train.interval
    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["timestamp", "point"] + [f"q{q:g}" for q in sorted(levels)])
        for h in range(args.horizon):
            row = [start + h * train.interval, repr(float(result.point[h]))]
            row += [repr(float(result.bands[q][h])) for q in sorted(levels)]
            writer.writerow(row)
    return 0


def cmd_bench(args) -> int:
    config = load_config(args.config)
    report = run_benchmark(config)
    text = render_report(report, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_synth(args) -> int:
    spec = SynthSpec(archetype=args.archetype, length=args.length,
                     interval=args.interval, noise_scale=args.noise_scale,
                     seed=args.seed)
    save_series(synth(spec), args.output)
    return 0


def cmd_report(args) -> int:
    try:
        with open(args.input) as fh:
            report = parse_report(fh.read())
    except OSError as exc:
        raise ForetelError(str(exc)) from None
    text = render_report(report, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foretel",
                                     description="Telemetry time-series forecasting")
    sub = parser.add_subparsers(dest="command", required=True)

    fc = sub.add_parser("forecast", help="forecast a series file")
    fc.add_argument("--input", required=True)
    fc.add_argument("--model", required=True, choices=MODEL_NAMES)
    fc.add_argument("--horizon", type=int, required=True)
    fc.add_argument("--scenarios", type=int, default=generator.DEFAULT_SCENARIOS)
    fc.add_argument("--seed", type=int, default=0)
    fc.add_argument("--quantiles", default="0.05,0.25,0.75,0.95")
    fc.add_argument("--output", required=True)
    fc.add_argument("--interval", type=int, default=0,
                    help="sampling period in seconds (default: inferred)")
    fc.add_argument("--timestamp-column", default="timestamp")
    fc.add_argument("--value-column", default="value")
    fc.add_argument("--alpha", type=float)
    fc.add_argument("--beta", type=float)
    fc.add_argument("--gamma", type=float)
    fc.add_argument("--period", type=int, default=0)
    fc.add_argument("--aw", type=int, default=24)
    fc.add_argument("--ridge-lambda", type=float, default=1e-6)
    fc.add_argument("--transform", default="identity", choices=("identity", "log1p"))
    fc.set_defaults(func=cmd_forecast)

    bench = sub.add_parser("bench", help="run a benchmark config")
    bench.add_argument("--config", required=True)
    bench.add_argument("--format", default="aligned-table", choices=REPORT_FORMATS)
    bench.add_argument("--output")
    bench.set_defaults(func=cmd_bench)

    syn = sub.add_parser("synth", help="generate a synthetic series file")
    syn.add_argument("--archetype", required=True, choices=ARCHETYPES)
    syn.add_argument("--length", type=int, required=True)
    syn.add_argument("--interval", type=int, default=3600)
    syn.add_argument("--noise-scale", type=float, default=0.1)
    syn.add_argument("--seed", type=int, default=0)
    syn.add_argument("--output", required=True)
    syn.set_defaults(func=cmd_synth)

    rep = sub.add_parser("report", help="re-render a json-lines report")
    rep.add_argument("--input", required=True)
    rep.add_argument("--format", default="aligned-table", choices=REPORT_FORMATS)
    rep.add_argument("--output")
    rep.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on bad flags
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ForetelError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
