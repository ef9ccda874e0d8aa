"""Command-line front end.

Runs a builtin scenario or a manifest produced by an earlier run, writes
CSV time series, optional PPM snapshots, and a manifest.json that fully
reproduces the run.  Exit codes: 0 success, 1 usage error, 2 runtime
error.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import io
from .experiments import (
    ScenarioPreset,
    aggregate_results,
    builtin_presets,
    get_preset,
    run_replication_results,
)
from .params import ConfigError, coerce_param

OUT_DIR_ENV = "POLISIM_OUT_DIR"


class UsageError(Exception):
    """Bad flags, unknown scenario, or out-of-range overrides."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the documented contract is 1.
    def error(self, message: str):
        raise UsageError(message)


@dataclass
class RunConfig:
    """A fully resolved run request: effective preset plus output plumbing."""

    preset: ScenarioPreset
    seed: int
    out: str
    snapshots: bool = False
    snapshot_interval: int | None = None


def build_parser() -> _Parser:
    parser = _Parser(
        prog="polisim",
        description="Agent-based simulator of political attitude change through dialogues.",
    )
    parser.add_argument("--scenario", help="builtin scenario name (see --list-scenarios)")
    parser.add_argument("--config", help="path to a manifest.json from an earlier run")
    parser.add_argument("--seed", type=int, default=0, help="base RNG seed (default 0)")
    parser.add_argument("--steps", type=int, help="override total dialogue count")
    parser.add_argument("--replications", type=int, help="override replication count")
    parser.add_argument("--sample-interval", type=int, help="override steps between samples")
    parser.add_argument(
        "--out",
        help=f"output directory (default ${OUT_DIR_ENV} or ./runs); artifacts go in <out>/<scenario>/",
    )
    parser.add_argument("--snapshots", action="store_true", help="write PPM grid snapshots")
    parser.add_argument(
        "--snapshot-interval",
        type=int,
        help="steps between snapshots (default: start and end only)",
    )
    parser.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one model parameter (repeatable), e.g. --param s_h=4.0",
    )
    parser.add_argument("--list-scenarios", action="store_true", help="print scenario names and exit")
    return parser


def parse_args(argv: list[str] | None = None) -> RunConfig | None:
    """Resolve flags into a RunConfig; returns None when --list-scenarios ran."""
    ns = build_parser().parse_args(argv)
    if ns.list_scenarios:
        for preset in builtin_presets():
            print(preset.name)
        return None
    if ns.scenario and ns.config:
        raise UsageError("--scenario and --config are mutually exclusive")
    if ns.scenario:
        try:
            preset = get_preset(ns.scenario)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    elif ns.config:
        try:
            manifest = io.read_manifest(ns.config)
            preset = io.preset_from_manifest(manifest)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad config file: {exc}") from exc
        if ns.seed == 0:
            ns.seed = int(manifest.get("seed", 0))
        if ns.snapshot_interval is None and manifest.get("snapshot_interval") is not None:
            ns.snapshot_interval = int(manifest["snapshot_interval"])
        ns.snapshots = ns.snapshots or bool(manifest.get("snapshots"))
    else:
        raise UsageError("one of --scenario or --config is required")

    overrides = {}
    for item in ns.param:
        key, sep, raw = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        try:
            overrides[key] = coerce_param(key, raw)
        except ConfigError as exc:
            raise UsageError(str(exc)) from exc
    try:
        if overrides:
            preset = preset.with_overrides(params=preset.params.with_overrides(**overrides))
        preset_overrides = {}
        if ns.steps is not None:
            preset_overrides["steps"] = ns.steps
        if ns.replications is not None:
            preset_overrides["replications"] = ns.replications
        if ns.sample_interval is not None:
            preset_overrides["sample_interval"] = ns.sample_interval
        if preset_overrides:
            preset = preset.with_overrides(**preset_overrides)
    except (ConfigError, ValueError) as exc:
        raise UsageError(str(exc)) from exc

    out = ns.out or os.environ.get(OUT_DIR_ENV) or "runs"
    return RunConfig(
        preset=preset,
        seed=ns.seed,
        out=out,
        snapshots=ns.snapshots,
        snapshot_interval=ns.snapshot_interval,
    )


def execute(config: RunConfig) -> int:
    preset = config.preset
    snap_interval = None
    if config.snapshots:
        snap_interval = config.snapshot_interval or preset.steps
    results = run_replication_results(preset, config.seed, snapshot_interval=snap_interval)
    aggregate = aggregate_results(results, preset.name, config.seed) if len(results) > 1 else None
    manifest = io.build_manifest(
        preset,
        config.seed,
        snapshots=config.snapshots,
        snapshot_interval=config.snapshot_interval,
    )
    outdir = os.path.join(config.out, preset.name)
    io.write_run_outputs(outdir, results, aggregate, manifest)
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_args(argv)
    except UsageError as exc:
        print(f"polisim: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:
        # argparse's --help path exits 0 through here.
        return int(exc.code or 0)
    if config is None:
        return 0
    try:
        return execute(config)
    except (OSError, RuntimeError, ValueError) as exc:
        print(f"polisim: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
