import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foretel.errors import GapError, GridAmbiguityError, InvalidSplitError, UsageError
from foretel.series import (SynthSpec, TimeSeries, concat, regularize,
                            split_holdout, synth)


def make_series(values, interval=60, start=0):
    values = np.asarray(values, float)
    ts = start + interval * np.arange(len(values), dtype=np.int64)
    return TimeSeries(ts, values, interval)


class TestTimeSeries:
    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            TimeSeries(np.array([0, 60]), np.array([1.0, np.nan]), 60)

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            TimeSeries(np.array([60, 0]), np.array([1.0, 2.0]), 60)

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            TimeSeries(np.array([0]), np.array([1.0, 2.0]), 60)

    def test_values_immutable(self):
        s = make_series([1, 2, 3])
        with pytest.raises(ValueError):
            s.values[0] = 9.0


class TestSplitHoldout:
    def test_paper_half_split(self):
        s = make_series(np.arange(8760.0))
        sp = split_holdout(s, 4380)
        assert len(sp.train) == 4380 and len(sp.test) == 4380

    def test_minimal_split(self):
        sp = split_holdout(make_series([1.0, 2.0]), 1)
        assert len(sp.train) == 1 and len(sp.test) == 1

    def test_boundary_timestamps(self):
        s = make_series(np.arange(6000.0), interval=60)
        sp = split_holdout(s, 1000)
        assert len(sp.train) == 5000
        assert sp.train.timestamps[-1] + 60 == sp.test.timestamps[0]

    @pytest.mark.parametrize("n_test", [0, 5, 6, -1])
    def test_out_of_range(self, n_test):
        with pytest.raises(InvalidSplitError):
            split_holdout(make_series(np.arange(5.0)), n_test)

    @given(st.integers(2, 200), st.data())
    def test_split_concat_identity(self, n, data):
        s = make_series(np.arange(float(n)))
        n_test = data.draw(st.integers(1, n - 1))
        sp = split_holdout(s, n_test)
        back = concat(sp.train, sp.test)
        assert np.array_equal(back.timestamps, s.timestamps)
        assert np.array_equal(back.values, s.values)


class TestRegularize:
    def test_uniform_fixpoint(self):
        s = make_series([1.0, 2.0, 3.0], interval=60)
        for policy in ("forward-fill", "linear-interpolate", "error"):
            out = regularize(s, 60, policy)
            assert np.array_equal(out.timestamps, s.timestamps)
            assert np.array_equal(out.values, s.values)

    def test_linear_interpolation(self):
        s = TimeSeries(np.array([0, 60, 180]), np.array([1.0, 2.0, 4.0]), 60)
        out = regularize(s, 60, "linear-interpolate")
        assert np.array_equal(out.timestamps, [0, 60, 120, 180])
        assert np.allclose(out.values, [1.0, 2.0, 3.0, 4.0])

    def test_gap_error_names_timestamp(self):
        s = TimeSeries(np.array([0, 120]), np.array([1.0, 2.0]), 60)
        with pytest.raises(GapError, match="t=60"):
            regularize(s, 60, "error")

    def test_forward_fill(self):
        s = TimeSeries(np.array([0, 180]), np.array([5.0, 7.0]), 60)
        out = regularize(s, 60, "forward-fill")
        assert np.allclose(out.values, [5.0, 5.0, 5.0, 7.0])

    def test_snap_ambiguity(self):
        s = TimeSeries(np.array([0, 10, 60]), np.array([1.0, 2.0, 3.0]), 60)
        with pytest.raises(GridAmbiguityError):
            regularize(s, 60)

    def test_unknown_policy(self):
        with pytest.raises(UsageError):
            regularize(make_series([1.0, 2.0]), 60, "nope")

    @given(st.lists(st.integers(0, 50), min_size=2, max_size=20, unique=True))
    def test_idempotent(self, slots):
        slots = sorted(slots)
        s = TimeSeries(np.array(slots, np.int64) * 60,
                       np.arange(len(slots), dtype=float), 60)
        once = regularize(s, 60)
        twice = regularize(once, 60)
        assert np.array_equal(once.timestamps, twice.timestamps)
        assert np.array_equal(once.values, twice.values)

    @given(st.lists(st.integers(0, 50), min_size=2, max_size=20, unique=True))
    def test_preserves_on_grid_values(self, slots):
        slots = sorted(slots)
        vals = np.arange(len(slots), dtype=float) + 0.5
        s = TimeSeries(np.array(slots, np.int64) * 60, vals, 60)
        out = regularize(s, 60)
        for t, v in zip(s.timestamps, s.values):
            idx = (t - out.timestamps[0]) // 60
            assert out.values[idx] == v


def autocorr_direct(values, lag):
    """Direct-summation sample autocorrelation, independent of numpy fft paths."""
    x = np.asarray(values, float)
    x = x - x.mean()
    num = sum(x[i] * x[i + lag] for i in range(len(x) - lag))
    den = sum(v * v for v in x)
    return num / den


class TestSynth:
    def test_determinism(self):
        spec = SynthSpec("global-concentrated", 100, 3600, 0.2, 99)
        a, b = synth(spec), synth(spec)
        assert np.array_equal(a.values, b.values)
        assert np.array_equal(a.timestamps, b.timestamps)

    def test_noiseless_periodicity(self):
        spec = SynthSpec("daily-seasonal", 48, 3600, 0.0, 1)
        s = synth(spec)
        assert np.allclose(s.values[:24], s.values[24:48])

    def test_daily_autocorrelation(self):
        s = synth(SynthSpec("daily-seasonal", 240, 3600, 0.1, 7))
        assert autocorr_direct(s.values, 24) > 0.8

    def test_noisy_levels_near_base_levels(self):
        s = synth(SynthSpec("noisy-levels", 500, 60, 0.1, 3))
        levels = np.array([50.0, 120.0, 300.0, 800.0])
        dist = np.min(np.abs(s.values[:, None] - levels[None, :]), axis=1)
        # hourly component amplitude 10 plus small noise
        assert np.percentile(dist, 95) < 30

    def test_growing_seasonal_positive_growth(self):
        s = synth(SynthSpec("growing-seasonal", 480, 3600, 0.05, 5))
        # fitted exponential growth rate via least squares on the logs
        rate = np.polyfit(np.arange(len(s)), np.log(np.maximum(s.values, 1e-9)), 1)[0]
        assert rate > 0

    def test_length_invariant(self):
        with pytest.raises(UsageError):
            SynthSpec("daily-seasonal", 30, 3600)

    def test_unknown_archetype(self):
        with pytest.raises(UsageError):
            SynthSpec("sawtooth", 100, 3600)
