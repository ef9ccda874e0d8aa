"""polisim: agent-based simulation of political attitude change.

Agents on a spatial network hold a private opinion in [-1, 1] and adjust
it through dialogues with their neighbours. Statement weighting follows
one of four heuristics (homophily, attitude strength, their combination,
or a threshold rule), and an optional conformity mechanism makes agents
express opinions shifted toward their network's norm.
"""

from .backend import ACTIVE_BACKEND, available_backends
from .experiments import (
    AggregateResult,
    RunResult,
    ScenarioPreset,
    apply_intervention,
    builtin_presets,
    desk_preset,
    get_preset,
    rejector_impact_integral,
    run_replication_results,
    run_replications,
    run_scenario,
    two_agent_trajectory,
)
from .metrics import (
    MetricSample,
    Party,
    Snapshot,
    classify_party,
    dominant_modes,
    morans_i,
    opinion_histogram,
    party_counts,
    render_snapshot,
    sample_world,
    tally_statements,
)
from .model import (
    Agent,
    DialogueRecord,
    Statement,
    compute_conformity,
    compute_impact,
    express,
    statement_weight,
    update_private,
    weight_attitude_strength,
    weight_combined,
    weight_homophily,
    weight_jager,
)
from .network import LinkStructure, build_moore_lattice, build_social_reach, place_agents
from .params import ConfigError, ModelParams, NetworkKind, WeightMode
from .world import InterventionResult, World

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_BACKEND",
    "Agent",
    "AggregateResult",
    "ConfigError",
    "DialogueRecord",
    "InterventionResult",
    "LinkStructure",
    "MetricSample",
    "ModelParams",
    "NetworkKind",
    "Party",
    "RunResult",
    "ScenarioPreset",
    "Snapshot",
    "Statement",
    "WeightMode",
    "World",
    "apply_intervention",
    "available_backends",
    "build_moore_lattice",
    "build_social_reach",
    "builtin_presets",
    "classify_party",
    "compute_conformity",
    "compute_impact",
    "desk_preset",
    "dominant_modes",
    "express",
    "get_preset",
    "morans_i",
    "opinion_histogram",
    "party_counts",
    "place_agents",
    "rejector_impact_integral",
    "render_snapshot",
    "run_replication_results",
    "run_replications",
    "run_scenario",
    "sample_world",
    "statement_weight",
    "tally_statements",
    "two_agent_trajectory",
    "update_private",
    "weight_attitude_strength",
    "weight_combined",
    "weight_homophily",
    "weight_jager",
    "__version__",
]
