"""Dialogue mechanics on live worlds: ordering, updates, symmetries."""
import numpy as np
import pytest

from polisim.network import LinkStructure
from polisim.params import ModelParams, WeightMode
from polisim.world import World


def two_agent_world(p1, p2, **param_overrides):
    params = ModelParams(population=2, grid_size=3, social_reach=10.0, **param_overrides)
    world = World.create(params, seed=0)
    world.private[:] = (p1, p2)
    world.expressed[:] = (p1, p2)
    return world


def manual_world(params, positions, dense, private, seed=0, rejector=None):
    links = LinkStructure.from_dense(np.asarray(dense, dtype=bool))
    private = np.asarray(private, dtype=np.float64)
    return World(
        params=params,
        positions=np.asarray(positions, dtype=np.float64),
        links=links,
        private=private.copy(),
        expressed=private.copy(),
        is_rejector=np.zeros(len(private), dtype=np.uint8)
        if rejector is None
        else np.asarray(rejector, dtype=np.uint8),
        bit_generator=np.random.PCG64(seed),
    )


class TestDialogue:
    def test_full_weight_swap(self):
        # s_h=0 gives w=1: with one statement each, both agents adopt the
        # other's prior opinion.
        world = two_agent_world(0.8, -0.2, s_h=0.0)
        rec = world.run_dialogue(0)
        assert world.private[0] == pytest.approx(-0.2, abs=1e-12)
        assert world.private[1] == pytest.approx(0.8, abs=1e-12)
        assert set(rec.per_agent_impact) == {0, 1}

    def test_truthful_statements_equal_prior_private(self):
        params = ModelParams(s_h=1.0, population=25, grid_size=10, social_reach=4.0)
        world = World.create(params, seed=6)
        prior = world.private.copy()
        rec = None
        for i in range(world.n):
            rec = world.run_dialogue(i)
            if not rec.skipped:
                break
        for s in rec.statements:
            assert s.value == prior[s.speaker_id]

    def test_consensus_clique_fixed_point(self):
        params = ModelParams(s_h=1.0, population=3, grid_size=3, social_reach=10.0)
        world = World.create(params, seed=1)
        world.private[:] = 0.5
        world.expressed[:] = 0.5
        rec = world.run_dialogue(0)
        assert all(v == 0.0 for v in rec.per_agent_impact.values())
        assert (world.private == 0.5).all()

    def test_participants_are_initiator_and_network(self):
        params = ModelParams(population=4, grid_size=4, social_reach=1.5)
        chain = np.zeros((4, 4), dtype=bool)
        for i in (0, 1, 2):
            chain[i, i + 1] = chain[i + 1, i] = True
        world = manual_world(params, [[0, 0], [1, 0], [2, 0], [3, 0]], chain, [0.1, 0.2, 0.3, 0.4])
        rec = world.run_dialogue(1)
        assert {s.speaker_id for s in rec.statements} == {0, 1, 2}
        assert world.private[3] == 0.4

    def test_impact_bound(self):
        params = ModelParams(s_h=2.5, population=30, grid_size=12, social_reach=5.0)
        world = World.create(params, seed=8)
        prior = world.private.copy()
        rec = None
        for i in range(world.n):
            rec = world.run_dialogue(i)
            if not rec.skipped:
                break
        values = [s.value for s in rec.statements]
        for idx, impact in rec.per_agent_impact.items():
            heard = [v for v in values if v != prior[idx]] or values
            assert abs(impact) <= max(abs(v - prior[idx]) for v in values) + 1e-12
            assert abs(impact) <= 2.0

    def test_isolated_initiator_is_noop(self):
        params = ModelParams(population=3, grid_size=9, social_reach=1.5)
        dense = np.zeros((3, 3), dtype=bool)
        dense[0, 1] = dense[1, 0] = True
        world = manual_world(params, [[0, 0], [1, 0], [5, 5]], dense, [0.3, -0.3, 0.9])
        state = world.bit_generator.state["state"]["state"]
        rec = world.run_dialogue(2)
        assert rec.skipped and rec.statements == [] and rec.per_agent_impact == {}
        assert world.private[2] == 0.9
        assert world.bit_generator.state["state"]["state"] == state

    def test_isolated_agent_never_initiates(self):
        params = ModelParams(s_h=1.0, population=3, grid_size=9, social_reach=1.5)
        dense = np.zeros((3, 3), dtype=bool)
        dense[0, 1] = dense[1, 0] = True
        world = manual_world(params, [[0, 0], [1, 0], [5, 5]], dense, [0.3, -0.3, 0.9])
        world.advance(200)
        assert world.private[2] == 0.9
        assert world.private[0] != 0.3

    def test_all_isolated_raises(self):
        params = ModelParams(population=2, grid_size=9, social_reach=1.0)
        dense = np.zeros((2, 2), dtype=bool)
        world = manual_world(params, [[0, 0], [5, 5]], dense, [0.1, -0.1])
        with pytest.raises(RuntimeError):
            world.advance(1)

    def test_initiator_out_of_range(self):
        world = two_agent_world(0.1, -0.1)
        with pytest.raises(IndexError):
            world.run_dialogue(5)

    def test_negative_steps_rejected(self):
        world = two_agent_world(0.1, -0.1)
        with pytest.raises(ValueError):
            world.advance(-1)

    def test_zero_steps_noop(self):
        world = two_agent_world(0.1, -0.1)
        assert world.advance(0) == (0, 0, 0)
        assert world.time == 0


class TestConformity:
    def test_full_conformity_parrots_network_norm(self):
        # Gap 2 and s_c=0.5 clamp c to 1; the first speaker voices its
        # network's mean expressed opinion exactly.
        world = two_agent_world(1.0, -1.0, s_c=0.5, conformity_enabled=True)
        rec = world.run_dialogue(0)
        first = rec.statements[0]
        other = 1 - first.speaker_id
        assert first.value == (1.0, -1.0)[other]

    def test_conformity_off_means_expressed_mirrors_private(self):
        params = ModelParams(s_h=1.5, population=20, grid_size=10, social_reach=4.0)
        world = World.create(params, seed=12)
        world.advance(300)
        assert np.array_equal(world.private, world.expressed)

    def test_conformity_on_decouples_channels(self):
        params = ModelParams(
            s_h=2.0, s_c=0.5, conformity_enabled=True, population=30, grid_size=12, social_reach=5.0
        )
        world = World.create(params, seed=12)
        world.advance(400)
        assert not np.array_equal(world.private, world.expressed)
        assert (world.conformity >= 0).all() and (world.conformity <= 1).all()


class TestSymmetries:
    def test_odd_symmetry_exact(self):
        params = ModelParams(
            s_h=1.25, rejector_fraction=0.2, population=40, grid_size=16, social_reach=5.0
        )
        a = World.create(params, seed=21)
        b = World.create(params, seed=21)
        b.private[:] = -b.private
        b.expressed[:] = -b.expressed
        a.advance(2000)
        b.advance(2000)
        assert np.array_equal(a.private, -b.private)
        assert np.array_equal(a.expressed, -b.expressed)

    def test_determinism_bitwise(self):
        params = ModelParams(
            s_h=0.75, s_a=0.75, weight_mode=WeightMode.COMBINED, population=50, grid_size=20
        )
        a = World.create(params, seed=33)
        b = World.create(params, seed=33)
        a.advance(1500)
        b.advance(1500)
        assert np.array_equal(a.private, b.private)
        assert np.array_equal(a.expressed, b.expressed)
        assert a.rng.random() == b.rng.random()

    def test_range_safety(self):
        for mode, kw in [
            (WeightMode.HOMOPHILY, dict(s_h=2.5, rejector_fraction=0.3)),
            (WeightMode.ATTITUDE_STRENGTH, dict(s_a=1.25)),
            (WeightMode.JAGER_THRESHOLD, dict(alpha=1.0, beta=1.5)),
        ]:
            params = ModelParams(weight_mode=mode, population=40, grid_size=16, **kw)
            world = World.create(params, seed=2)
            world.advance(1000)
            assert (np.abs(world.private) <= 1.0).all()
            assert (np.abs(world.expressed) <= 1.0).all()


class TestWorldOps:
    def test_copy_is_independent(self):
        params = ModelParams(s_h=1.0, population=30, grid_size=12, social_reach=5.0)
        world = World.create(params, seed=3)
        dup = world.copy()
        world.advance(500)
        dup.advance(500)
        assert np.array_equal(world.private, dup.private)
        snapshot = dup.private.copy()
        world.advance(100)
        assert np.array_equal(dup.private, snapshot)
        assert world.bit_generator.state["state"]["state"] != dup.bit_generator.state["state"]["state"]

    def test_remove_extremists_worked_example(self):
        params = ModelParams(population=3, grid_size=3, social_reach=10.0)
        world = World.create(params, seed=0)
        world.private[:] = (0.9, -0.7, 0.1)
        world.expressed[:] = world.private
        outcome = world.remove_extremists()
        assert outcome.removed == 2 and outcome.remaining == 1
        assert world.n == 1
        assert world.private[0] == 0.1

    def test_remove_extremists_noop(self):
        params = ModelParams(population=3, grid_size=3, social_reach=10.0)
        world = World.create(params, seed=0)
        world.private[:] = (0.5, -0.5, 0.1)
        world.expressed[:] = world.private
        outcome = world.remove_extremists()
        assert outcome.removed == 0 and world.n == 3

    def test_time_advances(self):
        world = two_agent_world(0.4, -0.4)
        world.advance(7)
        world.run_dialogue(0)
        assert world.time == 8
