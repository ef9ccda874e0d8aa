"""Pure-Python dialogue engine (fallback backend).

This is the reference implementation of the hot loop. The compiled
backend in `_kernels.pyx` is a line-for-line translation; both must
consume the same random stream (one uniform double per draw) and perform
arithmetic in the same order so results are bit-identical.

Random primitives are built from raw uniforms so the two backends agree:
`rand_below` maps one double to an integer, and the shuffle is a
Fisher-Yates descent consuming one double per swap.
"""
from __future__ import annotations

import numpy as np

from .model import DialogueRecord, Statement
from .params import WeightMode

# Integer codes shared with the compiled kernel.
MODE_HOMOPHILY = 0
MODE_ATTITUDE = 1
MODE_COMBINED = 2
MODE_JAGER = 3

MODE_CODE = {
    WeightMode.HOMOPHILY: MODE_HOMOPHILY,
    WeightMode.ATTITUDE_STRENGTH: MODE_ATTITUDE,
    WeightMode.COMBINED: MODE_COMBINED,
    WeightMode.JAGER_THRESHOLD: MODE_JAGER,
}

CENTRIST_MAX = 0.33
MODERATE_MAX = 0.66


def rand_below(u: float, n: int) -> int:
    """Map one uniform double in [0,1) to an integer in [0, n)."""
    j = int(u * n)
    if j >= n:  # guard against round-up at u ~ 1
        j = n - 1
    return j


def draw_initiator(rng, indptr, n: int) -> int:
    """Uniform draw over agents, redrawing while the pick has no links."""
    while True:
        i = rand_below(rng.random(), n)
        if indptr[i + 1] - indptr[i] > 0:
            return i


def _statement_weight(mode, pi, v, rej, s_h, s_a, alpha, beta) -> float:
    if mode == MODE_HOMOPHILY:
        d = v - pi
        if d < 0.0:
            d = -d
        w = 1.0 - s_h * d
        lo = -1.0 if rej else 0.0
        if w < lo:
            w = lo
        elif w > 1.0:
            w = 1.0
        return w
    if mode == MODE_ATTITUDE:
        a = pi if pi >= 0.0 else -pi
        w = 1.0 - s_a * a
        if w < 0.0:
            w = 0.0
        elif w > 1.0:
            w = 1.0
        return w
    if mode == MODE_COMBINED:
        d = v - pi
        if d < 0.0:
            d = -d
        a = pi if pi >= 0.0 else -pi
        w = 1.0 - s_h * d - s_a * a
        if w < 0.0:
            w = 0.0
        elif w > 1.0:
            w = 1.0
        return w
    d = v - pi
    if d < 0.0:
        d = -d
    if d < alpha:
        return 0.5
    if d > beta:
        return -0.5
    return 0.0


def dialogue(
    private: np.ndarray,
    expressed: np.ndarray,
    conformity: np.ndarray,
    is_rejector: np.ndarray,
    indptr: np.ndarray,
    indices: np.ndarray,
    mode: int,
    s_h: float,
    s_a: float,
    s_c: float,
    alpha: float,
    beta: float,
    conformity_on: bool,
    initiator: int,
    rng,
    tallies: np.ndarray,
    record_time: int | None = None,
) -> DialogueRecord | None:
    """Run one dialogue in place. Returns a DialogueRecord when
    record_time is given, else None (batch mode).

    An isolated initiator yields a skipped no-op record and consumes no
    randomness.
    """
    deg = int(indptr[initiator + 1] - indptr[initiator])
    if deg == 0:
        if record_time is not None:
            return DialogueRecord(time=record_time, initiator_id=initiator, skipped=True)
        return None

    participants = [initiator]
    for t in range(indptr[initiator], indptr[initiator + 1]):
        participants.append(int(indices[t]))
    n_p = deg + 1

    # Speaking order: Fisher-Yates descent, one uniform per swap.
    for k in range(n_p - 1, 0, -1):
        j = rand_below(rng.random(), k + 1)
        participants[k], participants[j] = participants[j], participants[k]

    # Statements, in speaking order. Conformity reads the live mean
    # expressed opinion of the speaker's own network, so earlier speakers
    # shift the norm later speakers perceive.
    stmt_val = [0.0] * n_p
    for idx in range(n_p):
        sp = participants[idx]
        p_sp = private[sp]
        if conformity_on:
            lo = int(indptr[sp])
            hi = int(indptr[sp + 1])
            acc = 0.0
            for t in range(lo, hi):
                acc += expressed[indices[t]]
            norm = acc / (hi - lo)
            gap = p_sp - norm
            if gap < 0.0:
                gap = -gap
            c = s_c * gap
            if c > 1.0:
                c = 1.0
            e = (1.0 - c) * p_sp + c * norm
            conformity[sp] = c
            expressed[sp] = e
        else:
            conformity[sp] = 0.0
            e = p_sp
            expressed[sp] = e
        stmt_val[idx] = e
        a = e if e >= 0.0 else -e
        if a <= CENTRIST_MAX:
            tallies[0] += 1
        elif a <= MODERATE_MAX:
            tallies[1] += 1
        else:
            tallies[2] += 1

    # Impacts: each participant weighs every statement but its own and
    # updates synchronously at dialogue end.
    new_private = [0.0] * n_p
    for idx in range(n_p):
        p = participants[idx]
        pi = float(private[p])
        rej = bool(is_rejector[p])
        acc = 0.0
        for jdx in range(n_p):
            if jdx == idx:
                continue
            v = stmt_val[jdx]
            w = _statement_weight(mode, pi, v, rej, s_h, s_a, alpha, beta)
            acc += w * (v - pi)
        impact = acc / (n_p - 1)
        np_val = pi + impact
        if np_val > 1.0:
            np_val = 1.0
        elif np_val < -1.0:
            np_val = -1.0
        new_private[idx] = np_val

    record = None
    if record_time is not None:
        record = DialogueRecord(
            time=record_time,
            initiator_id=initiator,
            statements=[Statement(participants[i], stmt_val[i]) for i in range(n_p)],
            per_agent_impact={
                participants[i]: new_private[i] - float(private[participants[i]])
                for i in range(n_p)
            },
        )

    for idx in range(n_p):
        private[participants[idx]] = new_private[idx]
    if not conformity_on:
        # Truthful expression: the expressed channel mirrors the private one.
        for idx in range(n_p):
            expressed[participants[idx]] = new_private[idx]
    return record


def advance(
    private: np.ndarray,
    expressed: np.ndarray,
    conformity: np.ndarray,
    is_rejector: np.ndarray,
    indptr: np.ndarray,
    indices: np.ndarray,
    mode: int,
    s_h: float,
    s_a: float,
    s_c: float,
    alpha: float,
    beta: float,
    conformity_on: bool,
    n_steps: int,
    rng,
    tallies: np.ndarray,
) -> None:
    """Run n_steps dialogues with uniformly drawn initiators, in place.

    `tallies` (int64[3]) accumulates per-party statement counts.
    The caller guarantees at least one agent has a link.
    """
    n = private.shape[0]
    for _ in range(n_steps):
        initiator = draw_initiator(rng, indptr, n)
        dialogue(
            private, expressed, conformity, is_rejector, indptr, indices,
            mode, s_h, s_a, s_c, alpha, beta, conformity_on,
            initiator, rng, tallies,
        )
