"""CSV, snapshot, and manifest serialization for run artifacts.

All writers are deterministic byte-for-byte: fixed column order, '\n'
line endings, UTF-8, '.' decimal separator, floats rendered with repr
(shortest exact round-trip), undefined values as the literal token NA.
"""
from __future__ import annotations

import json
import math
import os
from typing import Any, Iterable

from .experiments import SCALAR_METRICS, AggregateResult, RunResult, ScenarioPreset, sample_scalars
from .metrics import MetricSample, histogram_edges
from .params import ModelParams

NA = "NA"

TIMESERIES_COLUMNS = ("time",) + SCALAR_METRICS
HISTOGRAM_COLUMNS = ("time", "bin_low", "bin_high", "count")
SUMMARY_COLUMNS = ("metric", "time", "mean", "stddev")

# Columns whose values are integral counts, not measurements.
_INT_COLUMNS = frozenset(
    (
        "time",
        "count",
        "centrists",
        "moderates",
        "extremists",
        "expressed_centrists",
        "expressed_moderates",
        "expressed_extremists",
    )
)


def format_value(column: str, value: Any) -> str:
    if value is None:
        return NA
    if column in _INT_COLUMNS:
        return str(int(value))
    v = float(value)
    if math.isnan(v):
        return NA
    return repr(v)


def parse_value(column: str, text: str) -> float:
    if text == NA:
        return math.nan
    if column in _INT_COLUMNS:
        return int(text)
    return float(text)


def _write_rows(path: str | os.PathLike, header: Iterable[str], rows: Iterable[Iterable[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _read_rows(path: str | os.PathLike, expected_header: tuple[str, ...]) -> list[dict[str, float]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ValueError(f"{path}: empty file")
    header = tuple(lines[0].split(","))
    if header != expected_header:
        raise ValueError(f"{path}: header {header} != expected {expected_header}")
    out = []
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != len(header):
            raise ValueError(f"{path}: row arity {len(cells)} != {len(header)}")
        out.append({c: parse_value(c, cell) for c, cell in zip(header, cells)})
    return out


def write_timeseries(path: str | os.PathLike, samples: Iterable[MetricSample]) -> None:
    rows = []
    for s in samples:
        scalars = sample_scalars(s)
        row = [format_value("time", s.time)]
        row += [format_value(m, scalars[m]) for m in SCALAR_METRICS]
        rows.append(row)
    _write_rows(path, TIMESERIES_COLUMNS, rows)


def read_timeseries(path: str | os.PathLike) -> list[dict[str, float]]:
    return _read_rows(path, TIMESERIES_COLUMNS)


def write_histogram(path: str | os.PathLike, samples: Iterable[MetricSample]) -> None:
    rows = []
    for s in samples:
        edges = histogram_edges(len(s.histogram))
        t = format_value("time", s.time)
        for k, count in enumerate(s.histogram):
            rows.append(
                [
                    t,
                    format_value("bin_low", edges[k]),
                    format_value("bin_high", edges[k + 1]),
                    format_value("count", count),
                ]
            )
    _write_rows(path, HISTOGRAM_COLUMNS, rows)


def read_histogram(path: str | os.PathLike) -> list[dict[str, float]]:
    return _read_rows(path, HISTOGRAM_COLUMNS)


def write_summary(path: str | os.PathLike, aggregate: AggregateResult) -> None:
    rows = []
    for metric in SCALAR_METRICS:
        means = aggregate.mean(metric)
        stds = aggregate.stddev(metric)
        for t, m, s in zip(aggregate.times, means, stds):
            rows.append(
                [
                    metric,
                    format_value("time", t),
                    format_value("mean", m),
                    format_value("stddev", s),
                ]
            )
    _write_rows(path, SUMMARY_COLUMNS, rows)


def read_summary(path: str | os.PathLike) -> list[dict[str, Any]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = fh.read().splitlines()
    header = tuple(lines[0].split(","))
    if header != SUMMARY_COLUMNS:
        raise ValueError(f"{path}: header {header} != expected {SUMMARY_COLUMNS}")
    out = []
    for line in lines[1:]:
        metric, t, mean, std = line.split(",")
        out.append(
            {
                "metric": metric,
                "time": int(t),
                "mean": parse_value("mean", mean),
                "stddev": parse_value("stddev", std),
            }
        )
    return out


def snapshot_filename(run_name: str, channel: str, time: int) -> str:
    return f"{run_name}_{channel}_{time:08d}.ppm"


def write_snapshots(outdir: str | os.PathLike, run_name: str, result: RunResult) -> list[str]:
    written = []
    for snap in result.snapshots:
        name = snapshot_filename(run_name, snap.channel, snap.time)
        snap.write(os.path.join(outdir, name))
        written.append(name)
    return written


def build_manifest(
    preset: ScenarioPreset,
    seed: int,
    snapshots: bool = False,
    snapshot_interval: int | None = None,
    version: str | None = None,
) -> dict[str, Any]:
    """Everything needed to reproduce the run byte-for-byte."""
    if version is None:
        from . import __version__ as version
    return {
        "format": "polisim-run",
        "version": version,
        "scenario": preset.name,
        "seed": int(seed),
        "steps": int(preset.steps),
        "sample_interval": int(preset.sample_interval),
        "replications": int(preset.replications),
        "interventions": [[int(t), kind] for t, kind in preset.interventions],
        "params": preset.params.to_dict(),
        "snapshots": bool(snapshots),
        "snapshot_interval": None if snapshot_interval is None else int(snapshot_interval),
    }


def preset_from_manifest(manifest: dict[str, Any]) -> ScenarioPreset:
    return ScenarioPreset(
        name=str(manifest["scenario"]),
        params=ModelParams.from_dict(manifest["params"]),
        steps=int(manifest["steps"]),
        sample_interval=int(manifest["sample_interval"]),
        interventions=tuple((int(t), str(kind)) for t, kind in manifest.get("interventions", [])),
        replications=int(manifest.get("replications", 1)),
    )


def write_manifest(path: str | os.PathLike, manifest: dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def read_manifest(path: str | os.PathLike) -> dict[str, Any]:
    with open(path, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    if manifest.get("format") != "polisim-run":
        raise ValueError(f"{path}: not a polisim run manifest")
    return manifest


def write_run_outputs(
    outdir: str | os.PathLike,
    results: list[RunResult],
    aggregate: AggregateResult | None,
    manifest: dict[str, Any],
) -> None:
    """Lay out one scenario's artifacts under `outdir`.

    A single replication writes timeseries.csv, histogram.csv, and any
    snapshots at the top level.  Multiple replications write one
    rep-<k>/ directory per run plus an aggregate summary.csv at the
    top.  manifest.json always sits at the top level.
    """
    os.makedirs(outdir, exist_ok=True)
    run_name = manifest["scenario"]
    if len(results) == 1:
        res = results[0]
        write_timeseries(os.path.join(outdir, "timeseries.csv"), res.samples)
        write_histogram(os.path.join(outdir, "histogram.csv"), res.samples)
        write_snapshots(outdir, run_name, res)
    else:
        for k, res in enumerate(results):
            rep_dir = os.path.join(outdir, f"rep-{k}")
            os.makedirs(rep_dir, exist_ok=True)
            write_timeseries(os.path.join(rep_dir, "timeseries.csv"), res.samples)
            write_histogram(os.path.join(rep_dir, "histogram.csv"), res.samples)
            write_snapshots(rep_dir, run_name, res)
        if aggregate is not None:
            write_summary(os.path.join(outdir, "summary.csv"), aggregate)
    write_manifest(os.path.join(outdir, "manifest.json"), manifest)
