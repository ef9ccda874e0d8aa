"""World state: agents, links, RNG stream, and dialogue dispatch."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _engine_py
from .model import Agent, DialogueRecord
from .network import LinkStructure, build_moore_lattice, build_social_reach, place_agents
from .params import ModelParams, NetworkKind


@dataclass
class InterventionResult:
    """Outcome of an in-run modification of the population."""

    kind: str
    removed: int
    remaining: int


class World:
    """A population of agents on a spatial network plus one RNG stream.

    All mutable state lives in flat arrays so both engine backends can
    operate on it directly. The PCG64 bit generator is shared with the
    compiled kernel through its capsule, so dialogues advance the same
    stream no matter which backend runs them.
    """

    def __init__(
        self,
        params: ModelParams,
        positions: np.ndarray,
        links: LinkStructure,
        private: np.ndarray,
        expressed: np.ndarray,
        is_rejector: np.ndarray,
        bit_generator: np.random.PCG64,
        seed: int | None = None,
        time: int = 0,
    ):
        self.params = params
        self.positions = positions
        self.links = links
        self.private = private
        self.expressed = expressed
        self.conformity = np.zeros(private.shape[0], dtype=np.float64)
        self.is_rejector = is_rejector
        self.bit_generator = bit_generator
        self.rng = np.random.Generator(bit_generator)
        self.seed = seed
        self.time = time

    @classmethod
    def create(cls, params: ModelParams, seed: int | None = None) -> "World":
        """Build an initial world. Draw order from the seeded stream is
        fixed: grid placement, private opinions, then rejector flags.
        """
        bg = np.random.PCG64(seed)
        rng = np.random.Generator(bg)
        n = params.population
        if params.network_kind is NetworkKind.MOORE_LATTICE:
            positions, links = build_moore_lattice(params.grid_size)
        else:
            positions = place_agents(n, params.grid_size, rng)
            links = build_social_reach(
                positions, params.social_reach, params.grid_size, torus=params.torus
            )
        private = rng.uniform(-1.0, 1.0, n)
        expressed = private.copy()
        is_rejector = np.zeros(n, dtype=np.uint8)
        k = int(round(params.rejector_fraction * n))
        if k > 0:
            chosen = rng.choice(n, size=k, replace=False)
            is_rejector[chosen] = 1
        return cls(params, positions, links, private, expressed, is_rejector, bg, seed=seed)

    @property
    def n(self) -> int:
        return self.private.shape[0]

    def agent(self, i: int) -> Agent:
        """Snapshot view of one agent."""
        return Agent(
            id=i,
            pos=(int(self.positions[i, 0]), int(self.positions[i, 1])),
            private_opinion=float(self.private[i]),
            expressed_opinion=float(self.expressed[i]),
            is_rejector=bool(self.is_rejector[i]),
            conformity=float(self.conformity[i]),
        )

    def _kernel_args(self):
        p = self.params
        return (
            self.private,
            self.expressed,
            self.conformity,
            self.is_rejector,
            self.links.indptr,
            self.links.indices,
            _engine_py.MODE_CODE[p.weight_mode],
            p.s_h,
            p.s_a,
            p.s_c,
            p.alpha,
            p.beta,
            p.conformity_active,
        )

    def advance(self, steps: int, backend: str | None = None) -> tuple[int, int, int]:
        """Run `steps` dialogues with uniformly drawn initiators.

        Returns the per-party statement tally for the window
        (centrist, moderate, extremist). Raises RuntimeError when no
        agent has any link, since no dialogue could ever start.
        """
        if steps < 0:
            raise ValueError("steps must be non-negative")
        tallies = np.zeros(3, dtype=np.int64)
        if steps == 0:
            return (0, 0, 0)
        if self.links.nnz == 0:
            raise RuntimeError("no dialogue possible: every agent is isolated")
        from . import backend as _backend

        kernel = _backend.resolve(backend)
        if kernel is _engine_py:
            kernel.advance(*self._kernel_args(), steps, self.rng, tallies)
        else:
            kernel.advance(*self._kernel_args(), steps, self.bit_generator.capsule, tallies)
        self.time += steps
        return (int(tallies[0]), int(tallies[1]), int(tallies[2]))

    def run_dialogue(self, initiator: int | None = None) -> DialogueRecord:
        """Run a single dialogue and return its full record.

        When `initiator` is omitted it is drawn like in `advance`. An
        explicitly passed isolated initiator produces a skipped record.
        """
        if initiator is None:
            if self.links.nnz == 0:
                raise RuntimeError("no dialogue possible: every agent is isolated")
            initiator = _engine_py.draw_initiator(self.rng, self.links.indptr, self.n)
        elif not 0 <= initiator < self.n:
            raise IndexError(f"initiator {initiator} out of range")
        tallies = np.zeros(3, dtype=np.int64)
        record = _engine_py.dialogue(
            *self._kernel_args(), initiator, self.rng, tallies, record_time=self.time
        )
        self.time += 1
        return record

    def remove_extremists(self) -> InterventionResult:
        """Delete every agent with |private opinion| > 0.66 and compact
        the arrays and link structure around the survivors.
        """
        keep = np.abs(self.private) <= 0.66
        removed = int(self.n - keep.sum())
        if removed > 0:
            self.positions = self.positions[keep]
            self.private = self.private[keep]
            self.expressed = self.expressed[keep]
            self.conformity = self.conformity[keep]
            self.is_rejector = self.is_rejector[keep]
            self.links = self.links.subset(keep)
        return InterventionResult(kind="remove-extremists", removed=removed, remaining=self.n)

    def copy(self) -> "World":
        """Independent deep copy, including the RNG stream position."""
        bg = np.random.PCG64()
        bg.state = self.bit_generator.state
        clone = World(
            self.params,
            self.positions.copy(),
            self.links.copy(),
            self.private.copy(),
            self.expressed.copy(),
            self.is_rejector.copy(),
            bg,
            seed=self.seed,
            time=self.time,
        )
        clone.conformity = self.conformity.copy()
        return clone
