"""Agent placement and link-structure construction.

Two builders: the social-reach network (links between agents closer than
R on the grid) and the Moore-neighborhood lattice. Both produce a
LinkStructure in compressed sparse row form, symmetric and irreflexive.
Distances default to toroidal wrap-around; pass torus=False for a bounded
grid.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import ConfigError


@dataclass
class LinkStructure:
    """Symmetric boolean relation over agent indices, stored as CSR.

    indptr[i]:indptr[i+1] slices `indices` into agent i's sorted neighbor
    list. `row` is the directed-edge source array matching `indices`
    (precomputed for O(nnz) spatial statistics).
    """

    n: int
    indptr: np.ndarray  # int64, shape (n+1,)
    indices: np.ndarray  # int64, shape (nnz,)

    def __post_init__(self) -> None:
        self.indptr = np.ascontiguousarray(self.indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(self.indices, dtype=np.int64)
        self.degree = np.diff(self.indptr)
        self.row = np.repeat(np.arange(self.n, dtype=np.int64), self.degree)

    @property
    def nnz(self) -> int:
        """Number of directed links (twice the undirected link count)."""
        return int(self.indices.shape[0])

    @property
    def n_links(self) -> int:
        return self.nnz // 2

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def to_dense(self) -> np.ndarray:
        """Dense boolean adjacency matrix (tests and small oracles only)."""
        m = np.zeros((self.n, self.n), dtype=bool)
        m[self.row, self.indices] = True
        return m

    @classmethod
    def from_dense(cls, m: np.ndarray) -> "LinkStructure":
        m = np.asarray(m, dtype=bool)
        row, col = np.nonzero(m)
        order = np.lexsort((col, row))
        indptr = np.zeros(m.shape[0] + 1, dtype=np.int64)
        np.add.at(indptr, row + 1, 1)
        return cls(m.shape[0], np.cumsum(indptr), col[order].astype(np.int64))

    def subset(self, keep: np.ndarray) -> "LinkStructure":
        """Restrict to the agents where `keep` is True, reindexing densely."""
        keep = np.asarray(keep, dtype=bool)
        new_id = np.cumsum(keep) - 1
        edge_ok = keep[self.row] & keep[self.indices]
        row = new_id[self.row[edge_ok]]
        col = new_id[self.indices[edge_ok]]
        n_new = int(keep.sum())
        indptr = np.zeros(n_new + 1, dtype=np.int64)
        np.add.at(indptr, row + 1, 1)
        return LinkStructure(n_new, np.cumsum(indptr), col.astype(np.int64))

    def copy(self) -> "LinkStructure":
        return LinkStructure(self.n, self.indptr.copy(), self.indices.copy())


def place_agents(count: int, grid_size: int, rng: np.random.Generator) -> np.ndarray:
    """Scatter agents over distinct grid cells, uniformly without replacement.

    Returns float positions of shape (count, 2) in grid-cell units
    (x = column, y = row).
    """
    cells = grid_size * grid_size
    if count > cells:
        raise ConfigError(
            f"cannot place {count} agents on a {grid_size}x{grid_size} grid"
        )
    chosen = rng.choice(cells, size=count, replace=False)
    pos = np.empty((count, 2), dtype=np.float64)
    pos[:, 0] = chosen % grid_size
    pos[:, 1] = chosen // grid_size
    return pos


def pairwise_sq_distances(positions: np.ndarray, grid_size: int, torus: bool = True) -> np.ndarray:
    """Squared Euclidean distances between all position pairs."""
    delta = np.abs(positions[:, None, :] - positions[None, :, :])
    if torus:
        delta = np.minimum(delta, grid_size - delta)
    return (delta ** 2).sum(axis=-1)


def build_social_reach(
    positions: np.ndarray,
    reach: float,
    grid_size: int,
    torus: bool = True,
) -> LinkStructure:
    """Link every pair strictly closer than `reach` (distance_ij < R)."""
    if reach <= 0:
        raise ConfigError("social reach must be > 0")
    n = positions.shape[0]
    linked = pairwise_sq_distances(positions, grid_size, torus) < reach * reach
    np.fill_diagonal(linked, False)
    return LinkStructure.from_dense(linked)


def build_moore_lattice(side: int) -> tuple[np.ndarray, LinkStructure]:
    """One agent per cell of a side x side torus, linked to its 8 Moore neighbors."""
    if side < 3:
        raise ConfigError("moore lattice needs side >= 3 (neighbors would duplicate)")
    n = side * side
    idx = np.arange(n)
    x = idx % side
    y = idx // side
    positions = np.stack([x, y], axis=1).astype(np.float64)
    offsets = [(dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if (dx, dy) != (0, 0)]
    neigh = np.empty((n, 8), dtype=np.int64)
    for k, (dx, dy) in enumerate(offsets):
        neigh[:, k] = ((y + dy) % side) * side + ((x + dx) % side)
    neigh.sort(axis=1)
    indptr = np.arange(0, 8 * n + 1, 8, dtype=np.int64)
    return positions, LinkStructure(n, indptr, neigh.reshape(-1))
