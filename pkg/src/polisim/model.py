"""Scalar attitude-change rules: weights, conformity, expression, impact.

These are the readable reference forms of the update rules. The batch
engine (`_engine_py` / `_kernels`) inlines the same arithmetic for speed;
tests cross-check the two against each other.

Opinions live on [-1, 1]. A listener i weighs a statement of value e_j by
one of four heuristics, accumulates the weighted mean directed shift
(the dialogue's impact), and adds it to its private opinion, clamped back
into range.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .params import WeightMode


def clamp(x: float, lo: float, hi: float) -> float:
    if x < lo:
        return lo
    if x > hi:
        return hi
    return x


def weight_homophily(p_i: float, e_j: float, s_h: float, is_rejector: bool = False) -> float:
    """Persuasiveness declines with opinion dissimilarity.

    w = 1 - s_h * |e_j - p_i|, truncated to [0, 1] for ordinary agents.
    Rejectors keep negative weights (truncation widens to [-1, 1]), so
    statements far from their own opinion push them the other way.
    """
    w = 1.0 - s_h * abs(e_j - p_i)
    if is_rejector:
        return clamp(w, -1.0, 1.0)
    return clamp(w, 0.0, 1.0)


def weight_attitude_strength(p_i: float, s_a: float) -> float:
    """Receptiveness declines with the strength of the listener's own opinion.

    w = 1 - s_a * |p_i|, truncated to [0, 1]. The statement's content is
    irrelevant; a strongly-opinionated listener resists everything.
    """
    return clamp(1.0 - s_a * abs(p_i), 0.0, 1.0)


def weight_combined(p_i: float, e_j: float, s_h: float, s_a: float) -> float:
    """Linear combination of the homophily and attitude-strength penalties.

    w = 1 - s_h * |e_j - p_i| - s_a * |p_i|, truncated to [0, 1].
    """
    w = 1.0 - s_h * abs(e_j - p_i) - s_a * abs(p_i)
    return clamp(w, 0.0, 1.0)


def weight_jager(p_i: float, e_j: float, alpha: float, beta: float) -> float:
    """Threshold accept/ignore/reject rule (lattice variant).

    Returns 0.5 when the disagreement is below the acceptance threshold
    alpha, -0.5 beyond the rejection threshold beta, and 0 in between.
    """
    d = abs(e_j - p_i)
    if d < alpha:
        return 0.5
    if d > beta:
        return -0.5
    return 0.0


def compute_conformity(p_i: float, mean_network_expressed: float, s_c: float) -> float:
    """Conformity pressure grows with the gap between belief and norm.

    c = s_c * |p_i - mean expressed opinion of the agent's network|,
    clamped to [0, 1].
    """
    return clamp(s_c * abs(p_i - mean_network_expressed), 0.0, 1.0)


def express(p_i: float, c_i: float, mean_network_expressed: float) -> float:
    """Voiced opinion: convex combination of belief and network norm.

    E = (1-c)*p + c*norm. c=0 is truthful expression, exactly p; c=1
    parrots the norm exactly.
    """
    return (1.0 - c_i) * p_i + c_i * mean_network_expressed


def compute_impact(p_i: float, heard: list[tuple[float, float]]) -> float:
    """Mean weighted directed shift from the statements a listener heard.

    `heard` is a list of (statement value, weight) pairs, one per statement
    excluding the listener's own. Must be non-empty: a dialogue with no
    other participants never invokes this.
    """
    if not heard:
        raise ValueError("compute_impact requires at least one heard statement")
    acc = 0.0
    for value, w in heard:
        acc += w * (value - p_i)
    return acc / len(heard)


def update_private(p_i: float, impact: float) -> float:
    """Additive private-opinion update, clamped back into [-1, 1]."""
    return clamp(p_i + impact, -1.0, 1.0)


def statement_weight(
    p_i: float,
    e_j: float,
    mode: WeightMode,
    s_h: float,
    s_a: float,
    alpha: float,
    beta: float,
    is_rejector: bool,
) -> float:
    """Dispatch to the active heuristic.

    The rejector flag only matters under homophily; the jager rule builds
    rejection in for everyone, and the attitude-strength/combined
    experiments run without rejectors.
    """
    if mode is WeightMode.HOMOPHILY:
        return weight_homophily(p_i, e_j, s_h, is_rejector)
    if mode is WeightMode.ATTITUDE_STRENGTH:
        return weight_attitude_strength(p_i, s_a)
    if mode is WeightMode.COMBINED:
        return weight_combined(p_i, e_j, s_h, s_a)
    return weight_jager(p_i, e_j, alpha, beta)


@dataclass
class Agent:
    """Inspection view of one agent's state (the engine stores arrays)."""

    id: int
    pos: tuple[float, float]
    private_opinion: float
    expressed_opinion: float
    is_rejector: bool
    conformity: float


@dataclass(frozen=True)
class Statement:
    """One voiced opinion, in speaking order."""

    speaker_id: int
    value: float


@dataclass
class DialogueRecord:
    """Full trace of one dialogue: who spoke what, and who moved where."""

    time: int
    initiator_id: int
    statements: list[Statement] = field(default_factory=list)
    per_agent_impact: dict[int, float] = field(default_factory=dict)
    skipped: bool = False

    @property
    def participant_ids(self) -> list[int]:
        return [s.speaker_id for s in self.statements]
