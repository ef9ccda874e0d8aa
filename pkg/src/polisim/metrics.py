"""Observables: histograms, party classes, Moran's I, statement tallies, rasters.

Party classes split the opinion axis by |P| at 0.33 and 0.66. Moran's I
measures spatial autocorrelation of opinions over the link structure; it
is undefined (returned as NaN, serialized as NA) when the population is
at consensus.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Optional

import numpy as np

from .model import DialogueRecord
from .network import LinkStructure

CENTRIST_MAX = 0.33
MODERATE_MAX = 0.66


class Party(IntEnum):
    CENTRIST = 0
    MODERATE = 1
    EXTREMIST = 2


def classify_party(p: float) -> Party:
    """Party class by ideological strength. |p| <= 0.33 is centrist
    (p = 0 included for totality), 0.33 < |p| <= 0.66 moderate, else extremist."""
    a = abs(p)
    if a <= CENTRIST_MAX:
        return Party.CENTRIST
    if a <= MODERATE_MAX:
        return Party.MODERATE
    return Party.EXTREMIST


def party_counts(opinions: np.ndarray) -> tuple[int, int, int]:
    """(centrists, moderates, extremists) over an opinion vector."""
    a = np.abs(np.asarray(opinions, dtype=np.float64))
    centrists = int((a <= CENTRIST_MAX).sum())
    extremists = int((a > MODERATE_MAX).sum())
    return centrists, len(a) - centrists - extremists, extremists


def opinion_histogram(opinions: Iterable[float], bin_count: int = 40) -> np.ndarray:
    """Counts over `bin_count` equal-width bins spanning [-1, 1].

    Bins are closed on the left, open on the right, except the last bin
    which also contains the value exactly 1.0.
    """
    if bin_count < 2:
        raise ValueError("bin_count must be >= 2")
    edges = histogram_edges(bin_count)
    counts, _ = np.histogram(np.asarray(list(opinions), dtype=np.float64), bins=edges)
    return counts


def histogram_edges(bin_count: int = 40) -> np.ndarray:
    """Bin edges over [-1, 1]; the k-th edge is exactly 2k/bin_count - 1."""
    return (2.0 * np.arange(bin_count + 1)) / bin_count - 1.0


def dominant_modes(histogram: np.ndarray, threshold: float = 0.5) -> list[tuple[float, int]]:
    """Locate the dominant modes of a [-1, 1] opinion histogram.

    Adjacent bins whose count reaches `threshold` times the tallest bin
    are merged into one mode. Returns (count-weighted center, total mass)
    per mode, left to right.
    """
    counts = np.asarray(histogram, dtype=np.int64)
    edges = histogram_edges(counts.shape[0])
    centers = (edges[:-1] + edges[1:]) / 2.0
    peak = counts.max()
    if peak <= 0:
        return []
    hot = counts >= threshold * peak
    modes = []
    i = 0
    while i < counts.shape[0]:
        if hot[i]:
            j = i
            while j + 1 < counts.shape[0] and hot[j + 1]:
                j += 1
            mass = int(counts[i : j + 1].sum())
            center = float(np.average(centers[i : j + 1], weights=counts[i : j + 1]))
            modes.append((center, mass))
            i = j + 1
        else:
            i += 1
    return modes


def morans_i(opinions: np.ndarray, links: LinkStructure) -> float:
    """Spatial autocorrelation of opinions over the link matrix.

    M = (N / sum_ij L_ij) * sum_ij L_ij (x_i - m)(x_j - m) / sum_i (x_i - m)^2.

    Returns NaN at consensus (zero variance makes the statistic 0/0);
    raises on a linkless structure (the link-count denominator vanishes).
    The value is not clamped: anti-correlated patterns come out negative.
    """
    x = np.asarray(opinions, dtype=np.float64)
    if links.nnz == 0:
        raise ValueError("morans_i needs at least one link")
    if x.shape[0] != links.n:
        raise ValueError("opinion vector length does not match link structure")
    xc = x - x.mean()
    var_sum = float(xc @ xc)
    if var_sum == 0.0:
        return math.nan
    num = float(xc[links.row] @ xc[links.indices])
    return (links.n / links.nnz) * (num / var_sum)


def tally_statements(records: Iterable[DialogueRecord]) -> tuple[int, int, int]:
    """Per-party counts of every statement voiced in the given dialogues."""
    counts = [0, 0, 0]
    for rec in records:
        for s in rec.statements:
            counts[classify_party(s.value)] += 1
    return counts[0], counts[1], counts[2]


@dataclass
class MetricSample:
    """All observables at one sample time.

    statement_tallies counts the statements voiced since the previous
    sample, classified by party band of the statement value.
    """

    time: int
    histogram: np.ndarray
    party_counts: tuple[int, int, int]
    expressed_party_counts: tuple[int, int, int]
    morans_i_private: float
    morans_i_expressed: float
    statement_tallies: tuple[int, int, int]
    mean_opinion: float
    stddev_opinion: float

    @property
    def population(self) -> int:
        return int(self.histogram.sum())


def sample_world(world, time: int, statement_tallies=(0, 0, 0), bin_count: int = 40) -> MetricSample:
    """Snapshot every observable of a live world at the given time."""
    priv = world.private
    expr = world.expressed
    if world.links.nnz > 0:
        mi_p = morans_i(priv, world.links)
        mi_e = morans_i(expr, world.links)
    else:
        mi_p = math.nan
        mi_e = math.nan
    return MetricSample(
        time=time,
        histogram=opinion_histogram(priv, bin_count),
        party_counts=party_counts(priv),
        expressed_party_counts=party_counts(expr),
        morans_i_private=mi_p,
        morans_i_expressed=mi_e,
        statement_tallies=tuple(int(t) for t in statement_tallies),
        mean_opinion=float(priv.mean()) if len(priv) else math.nan,
        stddev_opinion=float(priv.std()) if len(priv) else math.nan,
    )


# ---------------------------------------------------------------------------
# Grid rasters

BACKGROUND_RGB = (242, 242, 242)


def opinion_rgb(v: float) -> tuple[int, int, int]:
    """Diverging color scale: -1 blue, 0 white, +1 red."""
    v = max(-1.0, min(1.0, v))
    if v >= 0:
        g = int(round(255 * (1.0 - v)))
        return 255, g, g
    b = int(round(255 * (1.0 + v)))
    return b, b, 255


@dataclass
class Snapshot:
    """RGB raster of the world grid; empty cells carry the background color."""

    grid_size: int
    channel: str
    pixels: np.ndarray  # uint8, shape (D, D, 3), row y, column x
    time: int = 0

    def to_ppm(self) -> bytes:
        header = f"P6\n{self.grid_size} {self.grid_size}\n255\n".encode("ascii")
        return header + self.pixels.tobytes()

    def write(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_ppm())


def render_snapshot(world, channel: str = "private") -> Snapshot:
    """Rasterize one opinion channel onto the world grid."""
    if channel not in ("private", "expressed"):
        raise ValueError(f"unknown snapshot channel: {channel!r}")
    d = world.params.grid_size
    pixels = np.empty((d, d, 3), dtype=np.uint8)
    pixels[:, :] = BACKGROUND_RGB
    values = world.private if channel == "private" else world.expressed
    xs = world.positions[:, 0].astype(np.int64)
    ys = world.positions[:, 1].astype(np.int64)
    for x, y, v in zip(xs, ys, values):
        pixels[y, x] = opinion_rgb(float(v))
    return Snapshot(grid_size=d, channel=channel, pixels=pixels, time=world.time)
