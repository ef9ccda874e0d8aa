"""Serialization: CSV writers and readers, snapshots, manifests, layout."""
from __future__ import annotations

import math
import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import polisim
from polisim.experiments import (
    SCALAR_METRICS,
    RunResult,
    ScenarioPreset,
    aggregate_results,
    run_replication_results,
    run_scenario,
)
from polisim.io import (
    HISTOGRAM_COLUMNS,
    NA,
    TIMESERIES_COLUMNS,
    build_manifest,
    format_value,
    parse_value,
    preset_from_manifest,
    read_histogram,
    read_manifest,
    read_summary,
    read_timeseries,
    snapshot_filename,
    write_histogram,
    write_manifest,
    write_run_outputs,
    write_snapshots,
    write_summary,
    write_timeseries,
)
from polisim.metrics import MetricSample
from polisim.params import ModelParams


def small_preset(**kwargs) -> ScenarioPreset:
    params = ModelParams(s_h=1.0, population=20, grid_size=10, social_reach=6.0)
    cfg = dict(name="small", params=params, steps=200, sample_interval=100, replications=1)
    cfg.update(kwargs)
    return ScenarioPreset(**cfg)


def synthetic_sample(time: int, morans: float = 0.5) -> MetricSample:
    hist = np.zeros(40, dtype=np.int64)
    hist[0] = 3
    hist[39] = 7
    return MetricSample(
        time=time,
        histogram=hist,
        party_counts=(3, 0, 7),
        expressed_party_counts=(3, 0, 7),
        morans_i_private=morans,
        morans_i_expressed=morans,
        statement_tallies=(1, 2, 3),
        mean_opinion=0.25,
        stddev_opinion=0.1,
    )


def synthetic_result(rows, seed=0) -> RunResult:
    return RunResult(
        preset_name="synthetic",
        seed=seed,
        samples=[synthetic_sample(t, v) for t, v in rows],
        final_private=np.zeros(10),
        final_expressed=np.zeros(10),
    )


class TestValueFormatting:
    def test_int_columns_render_as_integers(self):
        assert format_value("time", 250.0) == "250"
        assert format_value("count", np.int64(7)) == "7"
        assert format_value("centrists", 3) == "3"

    def test_float_columns_use_repr(self):
        assert format_value("mean_opinion", 0.1) == "0.1"
        assert format_value("morans_i_private", 0.30000000000000004) == "0.30000000000000004"

    def test_nan_renders_as_na(self):
        assert format_value("morans_i_private", math.nan) == NA
        assert format_value("mean", None) == NA

    def test_parse_na(self):
        assert math.isnan(parse_value("morans_i_private", NA))

    def test_parse_int_column(self):
        v = parse_value("time", "250")
        assert v == 250
        assert isinstance(v, int)

    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_float_round_trip_is_exact(self, x):
        assert parse_value("mean_opinion", format_value("mean_opinion", x)) == x


class TestTimeseries:
    def test_round_trip(self, tmp_path):
        result = run_scenario(small_preset(), seed=4)
        path = tmp_path / "timeseries.csv"
        write_timeseries(path, result.samples)
        rows = read_timeseries(path)
        assert len(rows) == len(result.samples)
        for row, sample in zip(rows, result.samples):
            assert row["time"] == sample.time
            assert row["centrists"] == sample.party_counts[0]
            assert row["mean_opinion"] == sample.mean_opinion
            assert row["stddev_opinion"] == sample.stddev_opinion

    def test_nan_written_as_na(self, tmp_path):
        path = tmp_path / "timeseries.csv"
        write_timeseries(path, [synthetic_sample(0, math.nan)])
        text = path.read_text(encoding="utf-8")
        assert ",NA,NA," in text
        rows = read_timeseries(path)
        assert math.isnan(rows[0]["morans_i_private"])

    def test_header_and_line_endings(self, tmp_path):
        path = tmp_path / "timeseries.csv"
        write_timeseries(path, [synthetic_sample(0)])
        raw = path.read_bytes()
        assert raw.startswith((",".join(TIMESERIES_COLUMNS) + "\n").encode())
        assert b"\r" not in raw

    def test_no_statement_columns(self):
        assert not any(c.startswith("statement") for c in TIMESERIES_COLUMNS)

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "timeseries.csv"
        path.write_text("time,foo\n0,1\n", encoding="utf-8")
        with pytest.raises(ValueError):
            read_timeseries(path)

    def test_bad_arity_rejected(self, tmp_path):
        path = tmp_path / "timeseries.csv"
        write_timeseries(path, [synthetic_sample(0)])
        with open(path, "a", encoding="utf-8") as fh:
            fh.write("1,2\n")
        with pytest.raises(ValueError):
            read_timeseries(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "timeseries.csv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(ValueError):
            read_timeseries(path)

    def test_writes_are_deterministic(self, tmp_path):
        result = run_scenario(small_preset(), seed=4)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_timeseries(a, result.samples)
        write_timeseries(b, result.samples)
        assert a.read_bytes() == b.read_bytes()


class TestHistogram:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "histogram.csv"
        write_histogram(path, [synthetic_sample(0), synthetic_sample(100)])
        rows = read_histogram(path)
        assert len(rows) == 80
        assert rows[0]["time"] == 0
        assert rows[0]["count"] == 3
        assert rows[39]["count"] == 7
        assert rows[40]["time"] == 100

    def test_bin_edges_span_opinion_range(self, tmp_path):
        path = tmp_path / "histogram.csv"
        write_histogram(path, [synthetic_sample(0)])
        rows = read_histogram(path)
        assert rows[0]["bin_low"] == -1.0
        assert rows[-1]["bin_high"] == 1.0
        for lo, hi in zip(rows[:-1], rows[1:]):
            assert lo["bin_high"] == hi["bin_low"]

    def test_edges_render_cleanly(self, tmp_path):
        # 2k/40 - 1 values have short exact decimal forms.
        path = tmp_path / "histogram.csv"
        write_histogram(path, [synthetic_sample(0)])
        text = path.read_text(encoding="utf-8")
        assert "\n0,-1.0,-0.95,3\n" in text
        assert HISTOGRAM_COLUMNS == ("time", "bin_low", "bin_high", "count")


class TestSummary:
    def make_aggregate(self):
        a = synthetic_result([(0, 0.25), (100, math.nan)])
        b = synthetic_result([(0, 0.75), (100, math.nan)], seed=1)
        return aggregate_results([a, b], "synthetic", 0)

    def test_round_trip(self, tmp_path):
        agg = self.make_aggregate()
        path = tmp_path / "summary.csv"
        write_summary(path, agg)
        rows = read_summary(path)
        assert len(rows) == len(SCALAR_METRICS) * 2
        assert rows[0]["metric"] == "centrists"
        by_key = {(r["metric"], r["time"]): r for r in rows}
        assert by_key[("morans_i_private", 0)]["mean"] == 0.5
        assert by_key[("morans_i_private", 0)]["stddev"] == 0.25
        assert math.isnan(by_key[("morans_i_private", 100)]["mean"])

    def test_metric_major_ordering(self, tmp_path):
        agg = self.make_aggregate()
        path = tmp_path / "summary.csv"
        write_summary(path, agg)
        rows = read_summary(path)
        metrics = [r["metric"] for r in rows]
        assert metrics == [m for m in SCALAR_METRICS for _ in range(2)]


class TestSnapshots:
    def test_filename_zero_padded(self):
        assert snapshot_filename("divergence", "private", 250) == "divergence_private_00000250.ppm"
        assert snapshot_filename("x", "expressed", 0) == "x_expressed_00000000.ppm"

    def test_write_snapshots(self, tmp_path):
        result = run_scenario(small_preset(), seed=4, snapshot_interval=100)
        names = write_snapshots(tmp_path, "small", result)
        assert names[0] == "small_private_00000000.ppm"
        assert len(names) == 6
        for name, snap in zip(names, result.snapshots):
            data = (tmp_path / name).read_bytes()
            assert data == snap.to_ppm()
            assert data.startswith(b"P6\n10 10\n255\n")
            assert len(data) == len(b"P6\n10 10\n255\n") + 10 * 10 * 3


class TestManifest:
    def test_preset_round_trip(self, tmp_path):
        preset = small_preset(
            interventions=((100, "remove-extremists"),), replications=3
        )
        manifest = build_manifest(preset, seed=42, snapshots=True, snapshot_interval=50)
        path = tmp_path / "manifest.json"
        write_manifest(path, manifest)
        loaded = read_manifest(path)
        assert loaded == manifest
        assert preset_from_manifest(loaded) == preset
        assert loaded["seed"] == 42
        assert loaded["snapshots"] is True
        assert loaded["snapshot_interval"] == 50
        assert loaded["version"] == polisim.__version__

    def test_rejects_foreign_json(self, tmp_path):
        path = tmp_path / "manifest.json"
        path.write_text('{"format": "something-else"}', encoding="utf-8")
        with pytest.raises(ValueError):
            read_manifest(path)

    def test_written_form_is_stable(self, tmp_path):
        manifest = build_manifest(small_preset(), seed=1)
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        write_manifest(a, manifest)
        write_manifest(b, manifest)
        assert a.read_bytes() == b.read_bytes()
        assert a.read_bytes().endswith(b"\n")


class TestRunLayout:
    def test_single_replication_layout(self, tmp_path):
        preset = small_preset()
        results = run_replication_results(preset, base_seed=4, replications=1)
        manifest = build_manifest(preset, seed=4)
        write_run_outputs(tmp_path, results, None, manifest)
        assert sorted(os.listdir(tmp_path)) == [
            "histogram.csv",
            "manifest.json",
            "timeseries.csv",
        ]

    def test_multi_replication_layout(self, tmp_path):
        preset = small_preset(replications=3)
        results = run_replication_results(preset, base_seed=4)
        agg = aggregate_results(results, preset.name, 4)
        manifest = build_manifest(preset, seed=4)
        write_run_outputs(tmp_path, results, agg, manifest)
        assert sorted(os.listdir(tmp_path)) == [
            "manifest.json",
            "rep-0",
            "rep-1",
            "rep-2",
            "summary.csv",
        ]
        for k in range(3):
            rep = tmp_path / f"rep-{k}"
            assert sorted(os.listdir(rep)) == ["histogram.csv", "timeseries.csv"]

    def test_snapshots_in_layout(self, tmp_path):
        preset = small_preset()
        results = [run_scenario(preset, seed=4, snapshot_interval=200)]
        manifest = build_manifest(preset, seed=4, snapshots=True, snapshot_interval=200)
        write_run_outputs(tmp_path, results, None, manifest)
        ppms = sorted(p for p in os.listdir(tmp_path) if p.endswith(".ppm"))
        assert ppms == [
            "small_expressed_00000000.ppm",
            "small_expressed_00000200.ppm",
            "small_private_00000000.ppm",
            "small_private_00000200.ppm",
        ]
