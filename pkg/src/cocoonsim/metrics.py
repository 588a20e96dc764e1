"""Trajectory statistics and comment-network summaries."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import COMMENT, SocialGraph, node_degrees


@dataclass(eq=False)
class Trajectory:
    """Per-step record of one run.

    ``delta_m[0]`` is NaN: the change in mean emotion is undefined before the
    first step.  ``new_spreaders`` and ``emotion_updates`` are kept in memory
    but are not part of the CSV schema.
    """

    t: np.ndarray
    i: np.ndarray
    mean_m: np.ndarray
    delta_m: np.ndarray
    new_comments: np.ndarray
    rewired: np.ndarray
    new_spreaders: np.ndarray = field(default=None)
    emotion_updates: np.ndarray = field(default=None)

    def __len__(self):
        return len(self.t)

    @classmethod
    def from_records(cls, records) -> "Trajectory":
        cols = list(zip(*records)) if records else [[]] * 8
        ints = lambda c: np.asarray(c, dtype=np.int64)
        return cls(
            t=ints(cols[0]),
            i=np.asarray(cols[1], dtype=float),
            mean_m=np.asarray(cols[2], dtype=float),
            delta_m=np.asarray(cols[3], dtype=float),
            new_comments=ints(cols[4]),
            rewired=ints(cols[5]),
            new_spreaders=ints(cols[6]),
            emotion_updates=ints(cols[7]),
        )


@dataclass
class EmotionRange:
    initial: float
    minimum: float
    maximum: float
    difference: float


@dataclass
class NetworkSummary:
    node_count: int
    edge_count: int
    mean_degree: float
    degree_histogram: dict[int, int]
    log_histogram: list[tuple[int, int, int]]


def densities(state) -> tuple[float, float]:
    """Unpublished and published fractions ``(s, i)``.

    Accepts a simulation state or anything with a boolean ``published`` mask
    (a graph), or a ``(S, I)`` count pair.
    """
    if isinstance(state, tuple):
        S, I = state
    else:
        published = state.graph.published if hasattr(state, "graph") else state.published
        I = int(np.count_nonzero(published))
        S = len(published) - I
    n = S + I
    if n == 0:
        raise ValueError("densities of an empty population are undefined")
    i = I / n
    # 1 - I/n rather than S/n: s + i must be exactly 1
    return 1.0 - i, i


def mean_emotion(graph: SocialGraph) -> float:
    if graph.n == 0:
        raise ValueError("mean emotion of an empty graph is undefined")
    return float(np.mean(graph.emotion))


def delta_mean_series(traj) -> np.ndarray:
    """First differences of the mean-emotion series (one shorter than the input)."""
    m = np.asarray(traj.mean_m if hasattr(traj, "mean_m") else traj, dtype=float)
    if m.size < 2:
        raise ValueError("need at least two steps to take differences")
    return np.diff(m)


def emotion_range(traj) -> EmotionRange:
    m = np.asarray(traj.mean_m if hasattr(traj, "mean_m") else traj, dtype=float)
    if m.size == 0:
        raise ValueError("empty trajectory")
    lo, hi = float(m.min()), float(m.max())
    return EmotionRange(float(m[0]), lo, hi, hi - lo)


def log_binned_histogram(degrees) -> list[tuple[int, int, int]]:
    """Counts of positive degrees in base-2 bins ``[2^j, 2^(j+1) - 1]``."""
    deg = np.asarray(degrees, dtype=np.int64)
    deg = deg[deg > 0]
    if deg.size == 0:
        return []
    top = int(deg.max()).bit_length()
    bins = []
    for j in range(top):
        low, high = 1 << j, (1 << (j + 1)) - 1
        bins.append((low, high, int(np.count_nonzero((deg >= low) & (deg <= high)))))
    return bins


def comment_network_summary(graph: SocialGraph, drop_silent: bool = True) -> NetworkSummary:
    """Structure of the comment layer, optionally ignoring silent nodes.

    A silent node has neither written nor received a comment.
    """
    deg = node_degrees(graph, COMMENT, "total")
    if drop_silent:
        deg = deg[deg > 0]
    values, counts = np.unique(deg, return_counts=True)
    return NetworkSummary(
        node_count=int(deg.size),
        edge_count=graph.n_comment_edges,
        mean_degree=float(deg.mean()) if deg.size else 0.0,
        degree_histogram={int(v): int(c) for v, c in zip(values, counts)},
        log_histogram=log_binned_histogram(deg),
    )
