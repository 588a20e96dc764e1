"""Spreading and emotion dynamics on the two-layer graph.

One step has two phases.  In the diffusion phase every published node passes
its post along each relationship link (links are traversed in both
directions) with probability ``alpha_I / <k>``; a reached unpublished node
publishes and its emotion moves toward the filtered comment cocoon of the
posts that reached it.  Independently, every neighbour of a published node
may comment on the post with the pairwise comment probability.  In the
topology phase relationship edges are rewired toward viewpoint-similar
nodes.  All draws in a step read the state at the start of the step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cocoon import build_hcac
from .graph import DegreeStats, GraphError, SocialGraph, degree_stats, node_degrees
from .metrics import Trajectory, mean_emotion
from .recommend import Rewirer, check_ra

# stream index mixed into the run seed so a run never replays the graph's draws
_RUN_STREAM = 1
QUIET_STEPS = 5


class HorizonReached(Exception):
    """Raised by :func:`step` once the configured horizon has been used up."""


@dataclass
class SpreadParams:
    alpha0: float = 0.3
    theta0: float = 8.62e-3
    lam: float = 0.1
    i0: float = 0.006
    ra: float = 0.85
    horizon: int = 200
    # "area": perturbation averaged over the whole comment area (unseen
    # commenters weigh zero); "cocoon": averaged over the visible commenters only
    perturbation_norm: str = "area"

    def __post_init__(self):
        for name in ("alpha0", "theta0", "lam"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if not 0.0 < self.i0 < 1.0:
            raise ValueError(f"i0 must lie in (0, 1), got {self.i0}")
        self.ra = check_ra(self.ra)
        if self.horizon < 0:
            raise ValueError("horizon must be non-negative")
        if self.perturbation_norm not in ("area", "cocoon"):
            raise ValueError(f"unknown perturbation_norm {self.perturbation_norm!r}")


@dataclass
class StepReport:
    new_spreaders: int = 0
    new_comment_edges: int = 0
    rewired_edges: int = 0
    emotion_updates: int = 0


@dataclass(eq=False)
class SimulationState:
    graph: SocialGraph
    ra: float
    t: int = 0
    rewirer: Rewirer = field(default=None, repr=False)

    def __post_init__(self):
        if self.rewirer is None or self.rewirer.ra != self.ra:
            self.rewirer = Rewirer(self.graph, self.ra)

    @property
    def spreader_count(self) -> int:
        return int(np.count_nonzero(self.graph.published))


def _rates(f, k, mean_k, k_max, alpha0):
    if k_max == 0:
        raise GraphError("spreading rate undefined on a graph without edges")
    return np.clip(alpha0 / 2.0 * (f + (k - mean_k) / k_max), 0.0, 1.0)


def spread_rate(node: int, graph: SocialGraph, stats: DegreeStats, alpha0: float) -> float:
    """``alpha0/2 * (f_i + (k_i - <k>) / k_max)`` clamped to [0, 1]."""
    k = node_degrees(graph)[node]
    return float(_rates(graph.faith[node], k, stats.mean_degree, stats.max_degree, alpha0))


def spread_rates(graph: SocialGraph, alpha0: float, stats: DegreeStats | None = None) -> np.ndarray:
    stats = stats or degree_stats(graph)
    return _rates(graph.faith, node_degrees(graph), stats.mean_degree, stats.max_degree, alpha0)


def comment_probability(commenter: int, parent: int, graph: SocialGraph, theta0: float) -> float:
    """Chance that ``commenter`` comments on ``parent``'s post.

    Grows with the parent's faith and with viewpoint agreement.
    """
    if commenter == parent:
        raise ValueError("a node does not comment on its own post")
    return float(_comment_probs(graph, commenter, parent, theta0))


def _comment_probs(graph, commenter, parent, theta0):
    dp = np.abs(graph.viewpoint[commenter] - graph.viewpoint[parent])
    return theta0 * (graph.faith[parent] + (1.0 - 2.0 * dp) ** 2) / 2.0


def emotion_perturbation(contributions, target_emotion: float, area_size: int | None = None) -> float:
    """Average pull of ``(source, commenter)`` emotion pairs on a target.

    Each pair contributes ``(m_source + m_commenter)/2 - m_target``.  The sum is
    divided by ``area_size`` when given (commenters hidden by the filter then
    count as zero pull), otherwise by the number of pairs.  Nothing to average
    means no perturbation.
    """
    l = len(contributions) if area_size is None else area_size
    if l == 0 or not contributions:
        return 0.0
    if l < len(contributions):
        raise ValueError("area_size cannot be smaller than the number of contributions")
    total = math.fsum((mi + mk) / 2.0 - target_emotion for mi, mk in contributions)
    return total / l


def apply_emotion_update(graph: SocialGraph, target: int, delta: float) -> float:
    graph.emotion[target] += delta
    return float(graph.emotion[target])


def step(state: SimulationState, params: SpreadParams, rng) -> StepReport:
    """Advance the simulation by one time step."""
    if state.t >= params.horizon:
        raise HorizonReached(state.t)
    if not hasattr(rng, "random"):
        rng = np.random.default_rng(rng)
    g = state.graph
    report = StepReport()
    pub0 = g.published.copy()
    m0 = g.emotion.copy()

    a = np.concatenate([g.r_src, g.r_dst])
    b = np.concatenate([g.r_dst, g.r_src])
    stats = degree_stats(g)
    link_p = np.minimum(spread_rates(g, params.alpha0, stats) / stats.mean_degree, 1.0)

    # diffusion: posts reach unpublished neighbours
    live = pub0[a] & ~pub0[b]
    src, dst = a[live], b[live]
    hit = rng.random(src.size) < link_p[src]
    src, dst = src[hit], dst[hit]

    reached: dict[int, list[int]] = {}
    for s, u in zip(src.tolist(), dst.tolist()):
        reached.setdefault(u, []).append(s)
    for u, sources in reached.items():
        contributions = []
        area = 0
        for s in sources:
            cocoon = build_hcac(g, s, u, params.ra)
            contributions.extend((m0[s], m0[k]) for k in cocoon.filtered_commenters)
            area += cocoon.area_size
        if not contributions:
            continue
        norm = area if params.perturbation_norm == "area" else None
        apply_emotion_update(g, u, emotion_perturbation(contributions, m0[u], norm))
        report.emotion_updates += 1

    # comments on live posts; cocoons above used the step-start comment layer
    posted = pub0[a]
    poster, commenter = a[posted], b[posted]
    theta = _comment_probs(g, commenter, poster, params.theta0)
    said = rng.random(poster.size) < theta
    for c, p in zip(commenter[said].tolist(), poster[said].tolist()):
        report.new_comment_edges += g.add_comment_edge(c, p)

    newly = np.fromiter(reached.keys(), dtype=np.int64, count=len(reached))
    g.published[newly] = True
    report.new_spreaders = len(newly)

    report.rewired_edges = state.rewirer.step(params.lam, rng)
    state.t += 1
    return report


def _run_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        return np.random.default_rng()
    return np.random.default_rng([int(seed), _RUN_STREAM])


def initial_spreader_count(n: int, i0: float) -> int:
    # round away float noise such as 0.29 * 100 = 28.999...
    return int(math.floor(round(i0 * n, 9)))


def run(graph: SocialGraph, params: SpreadParams, seed=None, on_step=None) -> Trajectory:
    """Seed ``floor(i0 * N)`` random spreaders and step until the horizon.

    A run stops early once every node is published and no node has changed
    state for 5 consecutive steps.  ``graph`` is mutated in place.
    ``on_step(state, report)`` is called after every step if given.
    """
    n = graph.n
    n0 = initial_spreader_count(n, params.i0)
    if n0 == 0:
        raise ValueError(f"i0={params.i0} seeds no spreader on {n} nodes")
    rng = _run_rng(seed)
    graph.published[:] = False
    graph.published[rng.choice(n, size=n0, replace=False)] = True
    state = SimulationState(graph, params.ra)

    records = [(0, n0 / n, mean_emotion(graph), math.nan, 0, 0, n0, 0)]
    prev_m = records[0][2]
    quiet = 0
    while state.t < params.horizon:
        rep = step(state, params, rng)
        if on_step is not None:
            on_step(state, rep)
        m = mean_emotion(graph)
        records.append(
            (
                state.t,
                state.spreader_count / n,
                m,
                m - prev_m,
                rep.new_comment_edges,
                rep.rewired_edges,
                rep.new_spreaders,
                rep.emotion_updates,
            )
        )
        prev_m = m
        if state.spreader_count == n and rep.new_spreaders == 0:
            quiet += 1
            if quiet >= QUIET_STEPS:
                break
        else:
            quiet = 0
    return Trajectory.from_records(records)


def logistic_density(t, i0: float, rate: float):
    """Closed-form logistic spreader density ``i0 e^{rt} / (1 - i0 + i0 e^{rt})``."""
    if not 0.0 < i0 < 1.0:
        raise ValueError("i0 must lie in (0, 1)")
    t = np.asarray(t, dtype=float)
    out = 1.0 / (1.0 + (1.0 - i0) / i0 * np.exp(-rate * t))
    return float(out) if out.ndim == 0 else out
