"""Named experiment presets, scenario running, and analytic references.

Presets carry the published parameter sets at full scale (3000 agents on
a 200x200 grid, social reach 10, metrics every 250 dialogues, 100
replications). `desk_preset` rescales any of them to a small population
for quick runs; the qualitative outcomes survive the rescaling.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .metrics import MetricSample, Snapshot, render_snapshot, sample_world
from .params import ConfigError, ModelParams, NetworkKind, WeightMode
from .world import World

REMOVE_EXTREMISTS = "remove-extremists"
INTERVENTION_KINDS = (REMOVE_EXTREMISTS,)

# Scalar metric names, in the order the time series CSV uses.
SCALAR_METRICS = (
    "centrists",
    "moderates",
    "extremists",
    "expressed_centrists",
    "expressed_moderates",
    "expressed_extremists",
    "morans_i_private",
    "morans_i_expressed",
    "mean_opinion",
    "stddev_opinion",
)

STATUS_COMPLETED = "completed"
STATUS_TOO_FEW_AGENTS = "terminated: fewer than 2 agents remain"
STATUS_NO_LINKS = "terminated: no links remain"


@dataclass(frozen=True)
class ScenarioPreset:
    """A named, fully parameterized experiment."""

    name: str
    params: ModelParams
    steps: int
    sample_interval: int = 250
    interventions: tuple[tuple[int, str], ...] = ()
    replications: int = 100

    def __post_init__(self):
        if self.steps < 0:
            raise ConfigError("steps must be non-negative")
        if self.sample_interval <= 0:
            raise ConfigError("sample_interval must be positive")
        if self.steps % self.sample_interval != 0:
            raise ConfigError("sample_interval must divide steps")
        if self.replications < 1:
            raise ConfigError("replications must be at least 1")
        for t, kind in self.interventions:
            if kind not in INTERVENTION_KINDS:
                raise ConfigError(f"unknown intervention kind {kind!r}")
            if not 0 <= t <= self.steps:
                raise ConfigError(f"intervention time {t} outside run")

    def with_overrides(self, **kwargs) -> "ScenarioPreset":
        return replace(self, **kwargs)


@dataclass
class RunResult:
    """One seeded realization of a preset."""

    preset_name: str
    seed: int
    samples: list[MetricSample]
    final_private: np.ndarray
    final_expressed: np.ndarray
    snapshots: list[Snapshot] = field(default_factory=list)
    status: str = STATUS_COMPLETED

    @property
    def times(self) -> np.ndarray:
        return np.array([s.time for s in self.samples], dtype=np.int64)

    def scalar_series(self, metric: str) -> np.ndarray:
        return np.array([sample_scalars(s)[metric] for s in self.samples])


@dataclass
class AggregateResult:
    """Mean and standard deviation of every scalar metric over replications."""

    preset_name: str
    base_seed: int
    replications: int
    times: np.ndarray
    stats: dict[str, tuple[np.ndarray, np.ndarray]]

    def mean(self, metric: str) -> np.ndarray:
        return self.stats[metric][0]

    def stddev(self, metric: str) -> np.ndarray:
        return self.stats[metric][1]


def sample_scalars(sample: MetricSample) -> dict[str, float]:
    """Flatten a MetricSample into the named scalar metrics."""
    c, m, e = sample.party_counts
    ec, em, ee = sample.expressed_party_counts
    return {
        "centrists": float(c),
        "moderates": float(m),
        "extremists": float(e),
        "expressed_centrists": float(ec),
        "expressed_moderates": float(em),
        "expressed_extremists": float(ee),
        "morans_i_private": sample.morans_i_private,
        "morans_i_expressed": sample.morans_i_expressed,
        "mean_opinion": sample.mean_opinion,
        "stddev_opinion": sample.stddev_opinion,
    }


def _full_params(**kwargs) -> ModelParams:
    base = dict(grid_size=200, social_reach=10.0, population=3000)
    base.update(kwargs)
    return ModelParams(**base)


def _two_agent_params(**kwargs) -> ModelParams:
    return ModelParams(grid_size=3, social_reach=10.0, population=2, **kwargs)


def builtin_presets() -> list[ScenarioPreset]:
    """All named experiments at full published scale."""
    p = []
    p.append(ScenarioPreset("convergence", _full_params(s_h=1.0), steps=100_000))
    p.append(ScenarioPreset("divergence", _full_params(s_h=2.5), steps=100_000))
    p.append(ScenarioPreset("mixing", _full_params(s_h=2.5), steps=50_000))
    p.append(
        ScenarioPreset(
            "three-party", _full_params(s_h=4.0), steps=100_000
        )
    )
    p.append(
        ScenarioPreset(
            "clustering-1",
            _full_params(s_h=1.25, rejector_fraction=0.15),
            steps=100_000,
        )
    )
    p.append(
        ScenarioPreset(
            "nonmonotonic-1",
            _full_params(s_h=1.25, rejector_fraction=0.15),
            steps=100_000,
        )
    )
    p.append(
        ScenarioPreset(
            "nonmonotonic-1-removal",
            _full_params(s_h=1.25, rejector_fraction=0.15),
            steps=100_000,
            interventions=((20_000, REMOVE_EXTREMISTS),),
        )
    )
    p.append(
        ScenarioPreset(
            "diversity",
            _full_params(s_a=1.25, weight_mode=WeightMode.ATTITUDE_STRENGTH),
            steps=100_000,
        )
    )
    for name in ("nonmonotonic-2", "multimodal", "clustering-2", "clustering-3"):
        p.append(
            ScenarioPreset(
                name,
                _full_params(s_h=0.75, s_a=0.75, weight_mode=WeightMode.COMBINED),
                steps=100_000,
            )
        )
    for name in ("pluralistic-ignorance-1", "pluralistic-ignorance-2"):
        p.append(
            ScenarioPreset(
                name,
                _full_params(s_h=2.0, s_c=0.5, conformity_enabled=True),
                steps=100_000,
            )
        )
    p.append(
        ScenarioPreset(
            "attitude-polarization",
            _full_params(s_h=2.0, rejector_fraction=1.0),
            steps=100_000,
        )
    )
    p.append(
        ScenarioPreset(
            "two-agent-homophily",
            _two_agent_params(s_h=1.0),
            steps=10,
            sample_interval=1,
            replications=1,
        )
    )
    p.append(
        ScenarioPreset(
            "two-agent-attitude",
            _two_agent_params(s_a=1.0, weight_mode=WeightMode.ATTITUDE_STRENGTH),
            steps=50,
            sample_interval=1,
            replications=1,
        )
    )
    p.append(
        ScenarioPreset(
            "jager-lattice",
            ModelParams(
                weight_mode=WeightMode.JAGER_THRESHOLD,
                alpha=1.0,
                beta=1.5,
                grid_size=50,
                population=2500,
                network_kind=NetworkKind.MOORE_LATTICE,
            ),
            steps=300_000,
        )
    )
    return p


def get_preset(name: str) -> ScenarioPreset:
    for preset in builtin_presets():
        if preset.name == name:
            return preset
    known = ", ".join(sorted(pr.name for pr in builtin_presets()))
    raise KeyError(f"unknown scenario {name!r} (known: {known})")


# Step counts for the rescaled desk runs. With 500 agents each step is a
# larger per-capita dose of dialogue, so the published dynamics appear
# well within these horizons.
_DESK_STEPS = {
    "convergence": 30_000,
    "divergence": 50_000,
    "mixing": 50_000,
    "three-party": 50_000,
    "clustering-1": 60_000,
    "nonmonotonic-1": 60_000,
    "nonmonotonic-1-removal": 60_000,
    "diversity": 30_000,
    "nonmonotonic-2": 100_000,
    "multimodal": 100_000,
    "clustering-2": 100_000,
    "clustering-3": 100_000,
    "pluralistic-ignorance-1": 16_000,
    "pluralistic-ignorance-2": 16_000,
    "attitude-polarization": 20_000,
}

# Explicit desk intervention schedules where phase-fraction scaling would
# miss the dynamical landmark the intervention is meant to probe.  The
# rejector cascade at desk dose is metastable-explosive: the extremist
# count dips by t~2000 and the takeover, once nucleated, completes within
# ~2000 steps.  Removal at t=4000 lands in the window where the rise can
# begin, so the intervention actually tests whether polarization resumes.
_DESK_INTERVENTIONS = {
    "nonmonotonic-1-removal": ((4_000, REMOVE_EXTREMISTS),),
}


def desk_preset(name: str, replications: int = 10) -> ScenarioPreset:
    """A builtin preset rescaled to 500 agents on an 80x80 grid.

    The two-agent and lattice presets are already small and are returned
    with their own sizes.
    """
    preset = get_preset(name)
    if preset.params.population <= 2 or preset.params.network_kind is NetworkKind.MOORE_LATTICE:
        return preset.with_overrides(replications=min(replications, preset.replications))
    params = preset.params.with_overrides(population=500, grid_size=80, social_reach=10.0)
    steps = _DESK_STEPS.get(name, preset.steps)
    if name in _DESK_INTERVENTIONS:
        interventions = _DESK_INTERVENTIONS[name]
    else:
        # Intervention times keep their phase fraction, snapped to the
        # sample grid.
        scale = steps / preset.steps
        si = preset.sample_interval
        interventions = tuple(
            (min(max(int(round(t * scale / si)) * si, 0), steps), kind)
            for t, kind in preset.interventions
        )
    return preset.with_overrides(
        params=params, steps=steps, interventions=interventions, replications=replications
    )


def apply_intervention(world: World, kind: str):
    """Modify a world in place; returns the intervention outcome."""
    if kind == REMOVE_EXTREMISTS:
        return world.remove_extremists()
    raise ValueError(f"unknown intervention kind {kind!r}")


def run_scenario(
    preset: ScenarioPreset,
    seed: int,
    snapshot_interval: int | None = None,
    snapshot_channels: tuple[str, ...] = ("private", "expressed"),
    backend: str | None = None,
) -> RunResult:
    """Run one realization of a preset, sampling metrics periodically.

    Interventions scheduled at a sample time fire just after that sample
    is taken. A run whose population can no longer hold dialogues stops
    early with a terminated status.
    """
    world = World.create(preset.params, seed)
    samples = [sample_world(world, 0)]
    snapshots: list[Snapshot] = []

    def want_snapshot(t: int) -> bool:
        if snapshot_interval is None:
            return False
        if t == 0 or t == preset.steps:
            return True
        return snapshot_interval > 0 and t % snapshot_interval == 0

    def take_snapshots(t: int) -> None:
        for channel in snapshot_channels:
            snapshots.append(render_snapshot(world, channel))

    if want_snapshot(0):
        take_snapshots(0)

    sample_times = set(range(preset.sample_interval, preset.steps + 1, preset.sample_interval))
    interventions: dict[int, list[str]] = {}
    for t, kind in preset.interventions:
        interventions.setdefault(t, []).append(kind)
    breakpoints = sorted(sample_times | set(interventions))

    status = STATUS_COMPLETED
    tallies = np.zeros(3, dtype=np.int64)
    prev = 0
    for t in breakpoints:
        window = world.advance(t - prev, backend=backend)
        tallies += np.array(window, dtype=np.int64)
        prev = t
        if t in sample_times:
            samples.append(sample_world(world, t, tuple(int(x) for x in tallies)))
            tallies[:] = 0
            if want_snapshot(t):
                take_snapshots(t)
        for kind in interventions.get(t, ()):
            apply_intervention(world, kind)
            if world.n < 2:
                status = STATUS_TOO_FEW_AGENTS
            elif world.links.nnz == 0:
                status = STATUS_NO_LINKS
        if status != STATUS_COMPLETED:
            break

    return RunResult(
        preset_name=preset.name,
        seed=seed,
        samples=samples,
        final_private=world.private.copy(),
        final_expressed=world.expressed.copy(),
        snapshots=snapshots,
        status=status,
    )


def replication_seed(base_seed: int, k: int) -> int:
    """Seed for replication k: base + k, so each run is re-derivable."""
    return base_seed + k


def run_replication_results(
    preset: ScenarioPreset,
    base_seed: int,
    replications: int | None = None,
    workers: int = 1,
    backend: str | None = None,
    snapshot_interval: int | None = None,
) -> list[RunResult]:
    """Run independent replications; replication k uses seed base_seed + k."""
    count = preset.replications if replications is None else replications
    if count < 1:
        raise ValueError("replications must be at least 1")
    seeds = [replication_seed(base_seed, k) for k in range(count)]

    def one(seed: int) -> RunResult:
        return run_scenario(preset, seed, snapshot_interval=snapshot_interval, backend=backend)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, seeds))
    return [one(s) for s in seeds]


def run_replications(
    preset: ScenarioPreset,
    base_seed: int,
    replications: int | None = None,
    workers: int = 1,
    backend: str | None = None,
) -> AggregateResult:
    """Run independent replications and aggregate the scalar metrics.

    Values at each sample time are sorted before averaging, so the
    aggregate is exactly invariant to the order replications ran in.
    """
    results = run_replication_results(
        preset, base_seed, replications=replications, workers=workers, backend=backend
    )
    return aggregate_results(results, preset.name, base_seed)


def aggregate_results(
    results: list[RunResult], preset_name: str, base_seed: int
) -> AggregateResult:
    """Per-time mean and standard deviation of each scalar metric.

    Undefined values (NA) are excluded pointwise; a time where every
    replication is undefined stays NA. Early-terminated replications
    simply contribute fewer samples.
    """
    by_time: dict[int, list[dict[str, float]]] = {}
    for result in results:
        for sample in result.samples:
            by_time.setdefault(sample.time, []).append(sample_scalars(sample))
    times = np.array(sorted(by_time), dtype=np.int64)
    stats: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    for metric in SCALAR_METRICS:
        means = np.empty(times.shape[0])
        stds = np.empty(times.shape[0])
        for i, t in enumerate(times):
            vals = np.array([row[metric] for row in by_time[int(t)]])
            vals = np.sort(vals[~np.isnan(vals)])
            if vals.size == 0:
                means[i] = np.nan
                stds[i] = np.nan
            else:
                means[i] = vals.mean()
                stds[i] = vals.std()
        stats[metric] = (means, stds)
    return AggregateResult(
        preset_name=preset_name,
        base_seed=base_seed,
        replications=len(results),
        times=times,
        stats=stats,
    )


def rejector_impact_integral(p_i: float, s_h: float, resolution: int = 10_000) -> float:
    """Mean directed impact on a rejector at p_i from statements uniform
    on [-1, 1]: midpoint-rule integral of w * (P_j - p_i) over P_j,
    normalized by the interval length.
    """
    if resolution < 100:
        raise ValueError("resolution must be at least 100")
    h = 2.0 / resolution
    pj = -1.0 + (np.arange(resolution) + 0.5) * h
    w = np.clip(1.0 - s_h * np.abs(pj - p_i), -1.0, 1.0)
    return float(np.sum(w * (pj - p_i)) * h / 2.0)


def two_agent_trajectory(
    p1: float,
    p2: float,
    mode: WeightMode | str = WeightMode.HOMOPHILY,
    salience: float = 1.0,
    steps: int = 10,
) -> tuple[np.ndarray, np.ndarray]:
    """Trajectories of two mutually linked agents over alternating
    dialogues. Homophily mode converges symmetrically; attitude strength
    mode drifts toward the stronger-opinioned agent.
    """
    mode = WeightMode(mode)
    if mode not in (WeightMode.HOMOPHILY, WeightMode.ATTITUDE_STRENGTH):
        raise ValueError("two-agent trajectories support homophily or attitude strength")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if mode is WeightMode.HOMOPHILY:
        params = _two_agent_params(s_h=salience)
    else:
        params = _two_agent_params(s_a=salience, weight_mode=WeightMode.ATTITUDE_STRENGTH)
    world = World.create(params, seed=0)
    world.private[:] = (p1, p2)
    world.expressed[:] = world.private
    traj1 = [float(world.private[0])]
    traj2 = [float(world.private[1])]
    for k in range(steps):
        world.run_dialogue(initiator=k % 2)
        traj1.append(float(world.private[0]))
        traj2.append(float(world.private[1]))
    return np.array(traj1), np.array(traj2)
