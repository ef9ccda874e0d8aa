"""Placement and link-structure construction."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polisim.network import (
    LinkStructure,
    build_moore_lattice,
    build_social_reach,
    place_agents,
)
from polisim.params import ConfigError


def rng(seed=0):
    return np.random.default_rng(seed)


class TestPlaceAgents:
    def test_single_agent_in_bounds(self):
        pos = place_agents(1, 200, rng())
        assert pos.shape == (1, 2)
        assert 0 <= pos[0, 0] < 200 and 0 <= pos[0, 1] < 200

    def test_full_population_distinct_cells(self):
        pos = place_agents(3000, 200, rng(1))
        cells = {(int(x), int(y)) for x, y in pos}
        assert len(cells) == 3000

    def test_pigeonhole(self):
        with pytest.raises(ConfigError):
            place_agents(40001, 200, rng())

    def test_exact_capacity_fills_grid(self):
        pos = place_agents(9, 3, rng(2))
        assert {(int(x), int(y)) for x, y in pos} == {(x, y) for x in range(3) for y in range(3)}


class TestSocialReach:
    def test_distance_below_reach_links(self):
        pos = np.array([[0.0, 0.0], [9.9, 0.0]])
        links = build_social_reach(pos, 10.0, grid_size=200)
        assert links.nnz == 2

    def test_distance_at_reach_not_linked(self):
        pos = np.array([[0.0, 0.0], [10.0, 0.0]])
        links = build_social_reach(pos, 10.0, grid_size=200)
        assert links.nnz == 0

    def test_toroidal_wraparound(self):
        pos = np.array([[1.0, 1.0], [199.0, 199.0]])
        links = build_social_reach(pos, 10.0, grid_size=200)
        assert links.nnz == 2

    def test_bounded_grid_does_not_wrap(self):
        pos = np.array([[1.0, 1.0], [199.0, 199.0]])
        links = build_social_reach(pos, 10.0, grid_size=200, torus=False)
        assert links.nnz == 0

    def test_symmetric_irreflexive(self):
        pos = place_agents(120, 40, rng(7))
        links = build_social_reach(pos, 10.0, grid_size=40)
        dense = links.to_dense()
        assert np.array_equal(dense, dense.T)
        assert not dense.diagonal().any()

    def test_mean_degree_monotone_in_reach(self):
        pos = place_agents(200, 60, rng(11))
        degrees = [
            build_social_reach(pos, r, grid_size=60).degree.mean() for r in (5.0, 10.0, 20.0)
        ]
        assert degrees[0] < degrees[1] < degrees[2]

    def test_max_degree_spatially_bounded(self):
        # No agent can exceed the cell count inside its reach disc.
        pos = place_agents(300, 50, rng(3))
        r = 6.0
        links = build_social_reach(pos, r, grid_size=50)
        disc_cells = sum(
            1
            for dx in range(-6, 7)
            for dy in range(-6, 7)
            if dx * dx + dy * dy < r * r
        )
        assert links.degree.max() <= disc_cells


class TestMooreLattice:
    def test_side_three_degrees(self):
        _, links = build_moore_lattice(3)
        assert (links.degree == 8).all()

    def test_side_fifty_counts(self):
        pos, links = build_moore_lattice(50)
        assert pos.shape == (2500, 2)
        assert links.n_links == 10000

    def test_side_two_rejected(self):
        with pytest.raises(ConfigError):
            build_moore_lattice(2)

    def test_symmetric_irreflexive(self):
        _, links = build_moore_lattice(5)
        dense = links.to_dense()
        assert np.array_equal(dense, dense.T)
        assert not dense.diagonal().any()


class TestLinkStructure:
    @given(st.integers(min_value=2, max_value=8), st.integers(min_value=0, max_value=2**31 - 1))
    @settings(max_examples=200)
    def test_dense_round_trip(self, n, seed):
        m = np.random.default_rng(seed).random((n, n)) < 0.4
        m = m | m.T
        np.fill_diagonal(m, False)
        links = LinkStructure.from_dense(m)
        assert np.array_equal(links.to_dense(), m)
        assert links.degree.sum() == links.nnz

    def test_subset_matches_dense_oracle(self):
        g = np.random.default_rng(13)
        m = g.random((10, 10)) < 0.35
        m = m | m.T
        np.fill_diagonal(m, False)
        keep = g.random(10) < 0.6
        links = LinkStructure.from_dense(m).subset(keep)
        assert np.array_equal(links.to_dense(), m[np.ix_(keep, keep)])

    def test_copy_is_independent(self):
        _, links = build_moore_lattice(3)
        dup = links.copy()
        dup.indices[0] = 99
        assert links.indices[0] != 99

    def test_neighbors_sorted(self):
        pos = place_agents(80, 30, rng(5))
        links = build_social_reach(pos, 8.0, grid_size=30)
        for i in range(links.n):
            nb = links.neighbors(i)
            assert (np.diff(nb) > 0).all()
