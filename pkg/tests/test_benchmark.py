import json

import numpy as np
import pytest

from foretel.benchmark import (BenchmarkConfig, DatasetSpec, ModelSpec,
                               config_from_dict, load_config, load_dataset,
                               parse_report, render_report, resolved_holdouts,
                               run_benchmark, save_series)
from foretel.errors import ParseError, UsageError
from foretel.series import SynthSpec, TimeSeries


def small_config(tmp_path=None, **overrides):
    kwargs = dict(
        datasets=(DatasetSpec(
            name="daily",
            synth=SynthSpec("daily-seasonal", 500, 3600, 0.1, 3),
            interval=3600, seasonal_period=24),),
        models=(ModelSpec("ses"),
                ModelSpec("std", {"ridge_lambda": [1e-6], "transform": ["identity"]})),
        holdouts=(100,),
        scenarios=20,
        seed=1,
    )
    kwargs.update(overrides)
    return BenchmarkConfig(**kwargs)


class TestLoadDataset:
    def test_iso_timestamps_five_minute(self, tmp_path):
        path = tmp_path / "tweets.csv"
        lines = ["timestamp,value"]
        for i, v in enumerate([182, 151, 143, 190]):
            minute = 42 + 5 * i
            lines.append(f"2015-02-26 21:{minute:02d}:53,{v}")
        path.write_text("\n".join(lines) + "\n")
        ts = load_dataset(DatasetSpec(name="t", path=str(path), interval=300))
        assert ts.interval == 300
        assert len(ts) == 4
        assert np.array_equal(ts.values, [182.0, 151.0, 143.0, 190.0])

    def test_epoch_equals_iso(self, tmp_path):
        iso = tmp_path / "iso.csv"
        epoch = tmp_path / "epoch.csv"
        iso.write_text("timestamp,value\n"
                       "2015-02-26 21:00:00,1.5\n"
                       "2015-02-26 21:05:00,2.5\n")
        epoch.write_text("timestamp,value\n1424984400,1.5\n1424984700,2.5\n")
        a = load_dataset(DatasetSpec(name="a", path=str(iso), interval=300))
        b = load_dataset(DatasetSpec(name="b", path=str(epoch), interval=300))
        assert np.array_equal(a.timestamps, b.timestamps)
        assert np.array_equal(a.values, b.values)

    def test_aggregation_sum(self, tmp_path):
        path = tmp_path / "mins.csv"
        rows = ["timestamp,value"] + [f"{60 * i},1.0" for i in range(120)]
        path.write_text("\n".join(rows) + "\n")
        ts = load_dataset(DatasetSpec(name="m", path=str(path), interval=3600,
                                      aggregation="sum", aggregation_window=3600))
        assert len(ts) == 2
        assert np.array_equal(ts.values, [60.0, 60.0])

    def test_aggregation_mean(self, tmp_path):
        path = tmp_path / "mins.csv"
        rows = ["timestamp,value"] + [f"{60 * i},{float(i)}" for i in range(60)]
        path.write_text("\n".join(rows) + "\n")
        ts = load_dataset(DatasetSpec(name="m", path=str(path), interval=3600,
                                      aggregation="mean", aggregation_window=3600))
        assert ts.values[0] == pytest.approx(29.5)

    def test_parse_error_with_line_number(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("timestamp,value\n0,1.0\n60,not-a-number\n")
        with pytest.raises(ParseError, match=":3:"):
            load_dataset(DatasetSpec(name="b", path=str(path), interval=60))

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(ParseError):
            load_dataset(DatasetSpec(name="e", path=str(path), interval=60))

    def test_header_only(self, tmp_path):
        path = tmp_path / "h.csv"
        path.write_text("timestamp,value\n")
        with pytest.raises(ParseError, match="no data rows"):
            load_dataset(DatasetSpec(name="h", path=str(path), interval=60))

    def test_missing_column(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("time,count\n0,1\n")
        with pytest.raises(ParseError, match="not found"):
            load_dataset(DatasetSpec(name="c", path=str(path), interval=60))

    def test_interval_inference(self, tmp_path):
        path = tmp_path / "i.csv"
        path.write_text("timestamp,value\n0,1\n300,2\n600,3\n")
        ts = load_dataset(DatasetSpec(name="i", path=str(path), interval=0))
        assert ts.interval == 300

    def test_save_load_round_trip(self, tmp_path):
        spec = SynthSpec("daily-seasonal", 96, 3600, 0.2, 6)
        original = load_dataset(DatasetSpec(name="s", synth=spec, interval=3600))
        path = tmp_path / "out.csv"
        save_series(original, str(path))
        back = load_dataset(DatasetSpec(name="b", path=str(path), interval=3600))
        assert np.array_equal(back.timestamps, original.timestamps)
        assert np.array_equal(back.values, original.values)

    def test_spec_requires_one_source(self):
        with pytest.raises(UsageError):
            DatasetSpec(name="x")


class TestRunBenchmark:
    def test_report_completeness(self):
        report = run_benchmark(small_config())
        assert len(report.rows) == 1 * 2 * 1  # datasets x models x holdouts
        assert all(r.error is None for r in report.rows)
        assert {r.model for r in report.rows} == {"ses", "std"}

    def test_holdout_override(self):
        config = small_config(
            datasets=(DatasetSpec(
                name="lte",
                synth=SynthSpec("daily-seasonal", 8760, 3600, 0.1, 4),
                interval=3600, seasonal_period=24),),
            models=(ModelSpec("ses"),),
            holdouts=(5000,),
            holdout_overrides={"lte": {5000: 4380}},
        )
        assert resolved_holdouts(config, "lte") == [4380]
        report = run_benchmark(config)
        assert [r.holdout for r in report.rows] == [4380]

    def test_score_determinism(self):
        config = small_config(
            models=(ModelSpec("star", {"aw": [4], "ridge_lambda": [1e-6],
                                       "transform": ["identity"]}),))
        a = run_benchmark(config)
        b = run_benchmark(config)
        for ra, rb in zip(a.rows, b.rows):
            assert ra.r2 == rb.r2 and ra.lr2 == rb.lr2
            assert ra.params == rb.params

    def test_row_failure_does_not_abort(self):
        config = small_config(
            datasets=(DatasetSpec(name="missing", path="/no/such/file.csv",
                                  interval=3600),
                      DatasetSpec(
                          name="daily",
                          synth=SynthSpec("daily-seasonal", 500, 3600, 0.1, 3),
                          interval=3600, seasonal_period=24)),
            models=(ModelSpec("ses"),))
        report = run_benchmark(config)
        assert len(report.rows) == 2
        by_name = {r.dataset: r for r in report.rows}
        assert by_name["missing"].error is not None
        assert by_name["daily"].error is None

    def test_oversized_holdout_is_row_error(self):
        config = small_config(holdouts=(1000,))  # dataset length 500
        report = run_benchmark(config)
        assert all(r.error is not None for r in report.rows)


class TestRendering:
    def test_json_lines_round_trip(self):
        report = run_benchmark(small_config())
        text = render_report(report, "json-lines")
        back = parse_report(text)
        for a, b in zip(report.rows, back.rows):
            assert a.model == b.model and a.holdout == b.holdout
            assert a.r2 == b.r2 and a.lr2 == b.lr2 and a.rt_s == b.rt_s
            assert a.params == b.params

    def test_json_lines_parse_each_line(self):
        report = run_benchmark(small_config())
        for line in render_report(report, "json-lines").strip().splitlines():
            obj = json.loads(line)
            assert {"model", "dataset", "holdout", "rt_s", "r2", "lr2",
                    "params"} <= set(obj)

    def test_aligned_table_two_decimals(self):
        report = run_benchmark(small_config())
        text = render_report(report, "aligned-table")
        assert "dataset: daily" in text
        assert "RT(s)@100" in text
        # a best-marked value exists in each score column
        assert "*" in text

    def test_csv_format(self):
        report = run_benchmark(small_config())
        text = render_report(report, "comma-separated")
        lines = text.strip().splitlines()
        assert lines[0].startswith("model,dataset,holdout")
        assert len(lines) == 1 + len(report.rows)

    def test_empty_report_header_only(self):
        from foretel.benchmark import BenchmarkReport
        text = render_report(BenchmarkReport(rows=[]), "aligned-table")
        assert "model" in text

    def test_unknown_format(self):
        from foretel.benchmark import BenchmarkReport
        with pytest.raises(UsageError):
            render_report(BenchmarkReport(rows=[]), "xml")


class TestConfigLoading:
    def test_load_config_file(self, tmp_path):
        doc = {
            "holdouts": [50],
            "scenarios": 10,
            "seed": 3,
            "holdout_overrides": {"d": {"50": 40}},
            "datasets": [{"name": "d",
                          "synth": {"archetype": "daily-seasonal", "length": 300,
                                    "interval": 3600, "noise_scale": 0.1, "seed": 2},
                          "interval": 3600, "seasonal_period": 24}],
            "models": [{"name": "ses"}],
        }
        path = tmp_path / "config.json"
        path.write_text(json.dumps(doc))
        config = load_config(str(path))
        assert config.holdouts == (50,)
        assert resolved_holdouts(config, "d") == [40]
        assert config.scenarios == 10

    def test_rejects_empty_config(self):
        with pytest.raises(UsageError):
            config_from_dict({})

    def test_rejects_bad_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(UsageError):
            load_config(str(path))

    def test_model_grid_points(self):
        m = ModelSpec("star", {"aw": [4, 12], "ridge_lambda": [1e-6]})
        points = m.grid_points()
        assert len(points) == 2
        assert {"aw", "ridge_lambda"} == set(points[0])

    def test_unknown_model_rejected(self):
        with pytest.raises(UsageError):
            ModelSpec("prophet")
