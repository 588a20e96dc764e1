"""Node/edge data model, attribute sampling and topology generators.

The relationship layer is stored as two parallel integer arrays (``r_src``,
``r_dst``) so that rewiring can swap targets in place and the diffusion step
can vectorise over links.  The comment layer is sparse and grows one edge at a
time, so it lives in Python containers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

RELATIONSHIP = "relationship"
COMMENT = "comment"


class GraphError(ValueError):
    """Invalid graph parameters or operations."""


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _truncated_normal(rng, n, loc, scale, low, high):
    # redraw out-of-range values; keeps the density shape inside the interval
    out = rng.normal(loc, scale, n)
    bad = (out <= low) | (out >= high)
    while bad.any():
        out[bad] = rng.normal(loc, scale, int(bad.sum()))
        bad = (out <= low) | (out >= high)
    return out


@dataclass
class NodeAttributes:
    viewpoint: float
    emotion: float
    faith: float


def sample_attributes(n: int, seed=None) -> list[NodeAttributes]:
    """Draw ``n`` (viewpoint, emotion, faith) triples.

    Viewpoint and faith follow N(1/2, 1/4) restricted to (0, 1); emotion
    follows N(0, 1) restricted to (-1, 1).  Restriction is by rejection.
    """
    p, m, f = _sample_arrays(n, _rng(seed))
    return [NodeAttributes(float(a), float(b), float(c)) for a, b, c in zip(p, m, f)]


def _sample_arrays(n, rng):
    if n < 1:
        raise GraphError("cannot sample attributes for an empty node set")
    p = _truncated_normal(rng, n, 0.5, 0.25, 0.0, 1.0)
    m = _truncated_normal(rng, n, 0.0, 1.0, -1.0, 1.0)
    f = _truncated_normal(rng, n, 0.5, 0.25, 0.0, 1.0)
    return p, m, f


@dataclass
class DegreeStats:
    mean_degree: float
    max_degree: int
    histogram: dict[int, int]


@dataclass(eq=False)
class SocialGraph:
    """Two-layer directed social graph with per-node attributes.

    ``published`` holds the S/I state (False = unpublished S).  Comment edges
    run commenter -> post author; ``comment_in[j]`` lists the commenters of
    ``j`` in insertion order.
    """

    viewpoint: np.ndarray
    emotion: np.ndarray
    faith: np.ndarray
    r_src: np.ndarray
    r_dst: np.ndarray
    published: np.ndarray = None
    comment_in: list = None
    _comment_pairs: set = field(default_factory=set, init=False, repr=False)

    def __post_init__(self):
        n = len(self.viewpoint)
        self.viewpoint = np.asarray(self.viewpoint, dtype=float)
        self.emotion = np.asarray(self.emotion, dtype=float)
        self.faith = np.asarray(self.faith, dtype=float)
        self.r_src = np.asarray(self.r_src, dtype=np.int64)
        self.r_dst = np.asarray(self.r_dst, dtype=np.int64)
        if self.published is None:
            self.published = np.zeros(n, dtype=bool)
        if self.comment_in is None:
            self.comment_in = [[] for _ in range(n)]
        self._comment_pairs = {(c, j) for j, cs in enumerate(self.comment_in) for c in cs}
        if any(c == j for c, j in self._comment_pairs):
            raise GraphError("comment layer contains a self-loop")
        if np.any(self.r_src == self.r_dst):
            raise GraphError("relationship layer contains a self-loop")

    @property
    def n(self) -> int:
        return len(self.viewpoint)

    @property
    def n_relationship_edges(self) -> int:
        return len(self.r_src)

    @property
    def n_comment_edges(self) -> int:
        return len(self._comment_pairs)

    def relationship_edges(self) -> list[tuple[int, int]]:
        return list(zip(self.r_src.tolist(), self.r_dst.tolist()))

    def comment_edges(self) -> list[tuple[int, int]]:
        """Comment edges as (commenter, parent), ordered by parent then insertion."""
        return [(c, j) for j, cs in enumerate(self.comment_in) for c in cs]

    def has_comment_edge(self, commenter: int, parent: int) -> bool:
        return (commenter, parent) in self._comment_pairs

    def add_comment_edge(self, commenter: int, parent: int) -> bool:
        """Insert ``commenter -> parent`` unless it already exists.

        Repeat comments between the same ordered pair carry no extra weight,
        so the second insertion is a no-op returning False.
        """
        commenter, parent = int(commenter), int(parent)
        if commenter == parent:
            raise GraphError(f"node {commenter} cannot comment on itself")
        if not (0 <= commenter < self.n and 0 <= parent < self.n):
            raise GraphError(f"comment edge ({commenter}, {parent}) out of range")
        if (commenter, parent) in self._comment_pairs:
            return False
        self._comment_pairs.add((commenter, parent))
        self.comment_in[parent].append(commenter)
        return True

    def copy(self) -> "SocialGraph":
        return SocialGraph(
            viewpoint=self.viewpoint.copy(),
            emotion=self.emotion.copy(),
            faith=self.faith.copy(),
            r_src=self.r_src.copy(),
            r_dst=self.r_dst.copy(),
            published=self.published.copy(),
            comment_in=[list(cs) for cs in self.comment_in],
        )

    def attributes(self, node: int) -> NodeAttributes:
        return NodeAttributes(
            float(self.viewpoint[node]), float(self.emotion[node]), float(self.faith[node])
        )


def _degrees(graph: SocialGraph, layer: str, direction: str) -> np.ndarray:
    if layer == RELATIONSHIP:
        src, dst = graph.r_src, graph.r_dst
    elif layer == COMMENT:
        pairs = graph.comment_edges()
        src = np.fromiter((c for c, _ in pairs), dtype=np.int64, count=len(pairs))
        dst = np.fromiter((j for _, j in pairs), dtype=np.int64, count=len(pairs))
    else:
        raise GraphError(f"unknown layer {layer!r}")
    out_deg = np.bincount(src, minlength=graph.n)
    in_deg = np.bincount(dst, minlength=graph.n)
    if direction == "in":
        return in_deg
    if direction == "out":
        return out_deg
    if direction == "total":
        return in_deg + out_deg
    raise GraphError(f"unknown direction {direction!r}")


def node_degrees(graph: SocialGraph, layer: str = RELATIONSHIP, direction: str = "total") -> np.ndarray:
    """Per-node degree array for one layer and direction."""
    return _degrees(graph, layer, direction)


def degree_stats(graph: SocialGraph, layer: str = RELATIONSHIP, direction: str = "total") -> DegreeStats:
    deg = _degrees(graph, layer, direction)
    if deg.size == 0:
        return DegreeStats(0.0, 0, {})
    values, counts = np.unique(deg, return_counts=True)
    return DegreeStats(
        mean_degree=float(deg.sum() / graph.n),
        max_degree=int(deg.max()),
        histogram={int(v): int(c) for v, c in zip(values, counts)},
    )


def _from_edges(n, edges, rng) -> SocialGraph:
    p, m, f = _sample_arrays(n, rng)
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    return SocialGraph(viewpoint=p, emotion=m, faith=f, r_src=edges[:, 0], r_dst=edges[:, 1])


def generate_ba(n: int, target_mean_degree: float, seed=None) -> SocialGraph:
    """Preferential-attachment graph with mean total degree ``target_mean_degree``.

    Growth starts from a complete seed graph on max(3, ceil(k/2) + 1) nodes.
    Every later node links to floor(k/2) or ceil(k/2) distinct existing nodes,
    the larger count drawn with probability equal to the fractional part of
    k/2.  Edges point from the older node to the newer one, so a hub's ties
    are its out-edges and survive rewiring, which only moves edge targets.
    """
    if n < 3:
        raise GraphError("BA graph needs at least 3 nodes")
    if target_mean_degree < 2:
        raise GraphError("target mean degree must be at least 2")
    if target_mean_degree >= n:
        raise GraphError("target mean degree must be smaller than n")
    rng = _rng(seed)
    half = target_mean_degree / 2.0
    lo = math.floor(half)
    frac = half - lo
    m0 = min(n, max(3, math.ceil(half) + 1))

    edges = [(i, j) for j in range(m0) for i in range(j)]
    # each node appears once per incident edge end
    ends = [v for e in edges for v in e]
    for new in range(m0, n):
        m = lo + (1 if frac > 0 and rng.random() < frac else 0)
        m = min(m, new)
        targets: list[int] = []
        while len(targets) < m:
            t = ends[int(rng.integers(len(ends)))]
            if t not in targets:
                targets.append(t)
        for t in targets:
            edges.append((t, new))
            ends.extend((t, new))
    return _from_edges(n, edges, rng)


def generate_ws(n: int, ring_degree: int, rewire_beta: float, seed=None) -> SocialGraph:
    """Small-world graph: ring lattice with each lattice edge rewired w.p. ``rewire_beta``.

    Node ``i`` initially links to ``i + 1 .. i + ring_degree/2``; a rewired
    edge keeps its source and moves its far end to a uniform node that is
    neither the source nor already adjacent to it.
    """
    if ring_degree % 2:
        raise GraphError("ring degree must be even")
    if not 0 < ring_degree < n:
        raise GraphError("ring degree must satisfy 0 < k < n")
    if not 0.0 <= rewire_beta <= 1.0:
        raise GraphError("rewire_beta must be a probability")
    rng = _rng(seed)
    half = ring_degree // 2
    adj = [set() for _ in range(n)]
    edges = []
    for j in range(1, half + 1):
        for i in range(n):
            t = (i + j) % n
            edges.append([i, t])
            adj[i].add(t)
            adj[t].add(i)
    for e in edges:
        if rng.random() >= rewire_beta:
            continue
        u, v = e
        if len(adj[u]) >= n - 1:
            continue
        w = int(rng.integers(n))
        while w == u or w in adj[u]:
            w = int(rng.integers(n))
        adj[u].discard(v)
        adj[v].discard(u)
        adj[u].add(w)
        adj[w].add(u)
        e[1] = w
    return _from_edges(n, edges, rng)


def complete_graph(n: int, seed=None) -> SocialGraph:
    """Complete graph with one directed edge per unordered pair (higher id -> lower id)."""
    if n < 2:
        raise GraphError("complete graph needs at least 2 nodes")
    rng = _rng(seed)
    edges = [(j, i) for j in range(n) for i in range(j)]
    return _from_edges(n, edges, rng)
