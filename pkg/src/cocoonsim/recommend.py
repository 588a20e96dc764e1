"""Viewpoint-similarity filtering and relationship-edge rewiring."""

from __future__ import annotations

import math

import numpy as np

from .graph import SocialGraph


def check_ra(ra: float) -> float:
    ra = float(ra)
    if not 0.0 <= ra <= 1.0:
        raise ValueError(f"recommendation accuracy must lie in [0, 1], got {ra}")
    return ra


def kept_count(total: int, ra: float) -> int:
    """How many of ``total`` candidates survive filtering at accuracy ``ra``."""
    # floor: never over-recommend, and ra=1 leaves nothing
    return int(math.floor(total * (1.0 - ra)))


def viewpoint_filter(graph: SocialGraph, anchor: int, candidates, ra: float) -> list[int]:
    """Keep the ``floor(len(candidates) * (1 - ra))`` candidates closest in viewpoint.

    Candidates are ranked by ``|p_anchor - p_c|`` ascending with node id as
    tie-break, and the returned list follows that ranking.
    """
    ra = check_ra(ra)
    cand = np.asarray(list(candidates), dtype=np.int64)
    k = kept_count(len(cand), ra)
    if k == 0:
        return []
    diff = np.abs(graph.viewpoint[anchor] - graph.viewpoint[cand])
    order = np.lexsort((cand, diff))
    return cand[order[:k]].tolist()


class Rewirer:
    """Rewires relationship edges toward viewpoint-similar nodes.

    Viewpoints never change during a run, so the recommendation list of each
    anchor is computed once (lazily) and reused across steps.
    """

    def __init__(self, graph: SocialGraph, ra: float):
        self.graph = graph
        self.ra = check_ra(ra)
        n = graph.n
        self.k = kept_count(n - 1, self.ra)
        self._lists: dict[int, np.ndarray] = {}
        self._all = np.arange(n, dtype=np.int64)

    def recommendations(self, anchor: int) -> np.ndarray:
        rec = self._lists.get(anchor)
        if rec is None:
            others = np.delete(self._all, anchor)
            rec = np.asarray(viewpoint_filter(self.graph, anchor, others, self.ra), dtype=np.int64)
            self._lists[anchor] = rec
        return rec

    def _draw(self, rec, excluded, rng) -> int | None:
        # rejection sampling is exactly uniform over the eligible set
        if len(rec) > 2 * len(excluded):
            while True:
                c = int(rec[rng.integers(len(rec))])
                if c not in excluded:
                    return c
        eligible = [int(c) for c in rec if int(c) not in excluded]
        if not eligible:
            return None
        return eligible[int(rng.integers(len(eligible)))]

    def step(self, lam: float, rng: np.random.Generator) -> int:
        g = self.graph
        m = g.n_relationship_edges
        if m == 0 or self.k == 0:
            # nothing can ever be recommended; keep the RNG stream aligned anyway
            rng.random(m)
            return 0
        hits = np.flatnonzero(rng.random(m) < lam)
        if hits.size == 0:
            return 0
        out: dict[int, set] = {}
        for x, y in zip(g.r_src.tolist(), g.r_dst.tolist()):
            out.setdefault(x, set()).add(y)
        rewired = 0
        for e in hits.tolist():
            x, y = int(g.r_src[e]), int(g.r_dst[e])
            targets = out[x]
            new = self._draw(self.recommendations(x), targets, rng)
            if new is None:
                continue
            targets.discard(y)
            targets.add(new)
            g.r_dst[e] = new
            rewired += 1
        return rewired


def rewire_step(graph: SocialGraph, lam: float, ra: float, seed=None, rewirer: Rewirer | None = None) -> int:
    """Rewire each relationship edge independently with probability ``lam``.

    A chosen edge ``(x, y)`` moves to ``(x, y_new)`` with ``y_new`` drawn
    uniformly from x's recommendation list minus ``y`` and x's current
    out-neighbours.  Edges with no eligible replacement stay put.  Returns the
    number of edges moved.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("rewiring probability must lie in [0, 1]")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if rewirer is None or rewirer.graph is not graph:
        rewirer = Rewirer(graph, ra)
    return rewirer.step(lam, rng)
