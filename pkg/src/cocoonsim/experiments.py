"""Monte Carlo ensembles, the RA sweep, the adaptability suite and empirical comparison."""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import ExperimentConfig
from .dynamics import run
from .metrics import EmotionRange, NetworkSummary, Trajectory, comment_network_summary, emotion_range


@dataclass
class RunResult:
    seed: int
    trajectory: Trajectory
    comments: NetworkSummary


@dataclass(eq=False)
class EnsembleStats:
    """Per-step ensemble means and standard deviations over ``runs`` trajectories.

    Runs that stopped early are padded with their final state; their event
    counters are padded with zeros.
    """

    t: np.ndarray
    i_mean: np.ndarray
    i_std: np.ndarray
    m_mean: np.ndarray
    m_std: np.ndarray
    comments_mean: np.ndarray
    rewired_mean: np.ndarray
    ranges: list[EmotionRange]
    runs: list[RunResult] = field(repr=False, default_factory=list)

    @property
    def mean_difference(self) -> float:
        return float(np.mean([r.difference for r in self.ranges]))

    def mean_trajectory(self) -> Trajectory:
        delta = np.concatenate([[np.nan], np.diff(self.m_mean)])
        return Trajectory(self.t, self.i_mean, self.m_mean, delta, self.comments_mean, self.rewired_mean)


def run_one(config: ExperimentConfig, index: int, ra: float | None = None) -> RunResult:
    """Run ensemble member ``index``: graph and dynamics both seeded by ``seed + index``."""
    seed = config.seed + index
    params = config.spread_params(ra)
    graph = config.make_graph(seed)
    traj = run(graph, params, seed)
    return RunResult(seed, traj, comment_network_summary(graph, drop_silent=True))


def _pad(x, length, mode):
    if len(x) >= length:
        return np.asarray(x[:length], dtype=float)
    fill = x[-1] if mode == "edge" else 0
    return np.concatenate([np.asarray(x, dtype=float), np.full(length - len(x), fill, dtype=float)])


def aggregate(results: list[RunResult], horizon: int) -> EnsembleStats:
    length = horizon + 1
    i = np.array([_pad(r.trajectory.i, length, "edge") for r in results])
    m = np.array([_pad(r.trajectory.mean_m, length, "edge") for r in results])
    c = np.array([_pad(r.trajectory.new_comments, length, "zero") for r in results])
    w = np.array([_pad(r.trajectory.rewired, length, "zero") for r in results])
    return EnsembleStats(
        t=np.arange(length),
        i_mean=i.mean(axis=0),
        i_std=i.std(axis=0),
        m_mean=m.mean(axis=0),
        m_std=m.std(axis=0),
        comments_mean=c.mean(axis=0),
        rewired_mean=w.mean(axis=0),
        ranges=[emotion_range(r.trajectory) for r in results],
        runs=results,
    )


def _star_run(args):
    return run_one(*args)


def run_ensemble(config: ExperimentConfig, ra: float | None = None, workers: int | None = None) -> EnsembleStats:
    """Run ``config.runs`` independent members (seeds ``seed + i``) and aggregate them.

    ``workers > 1`` spreads members over processes; the result does not depend
    on it.
    """
    jobs = [(config, i, ra) for i in range(config.runs)]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_star_run, jobs))
    else:
        results = [_star_run(j) for j in jobs]
    return aggregate(results, config.horizon)


@dataclass
class SweepRow:
    ra: float
    mean_difference: float
    min_m: float
    max_m: float
    initial_m: float


def ra_sweep(config: ExperimentConfig, ra_values, workers: int | None = None):
    """Ensemble emotion-range statistics for each RA value.

    Member ``i`` of every ensemble shares the same initial graph and initial
    spreaders, so the initial mean emotion is identical across rows.
    Returns ``(rows, ensembles)``.
    """
    rows, ensembles = [], []
    for ra in ra_values:
        ens = run_ensemble(config, ra=ra, workers=workers)
        rows.append(
            SweepRow(
                ra=float(ra),
                mean_difference=ens.mean_difference,
                min_m=float(np.mean([r.minimum for r in ens.ranges])),
                max_m=float(np.mean([r.maximum for r in ens.ranges])),
                initial_m=float(np.mean([r.initial for r in ens.ranges])),
            )
        )
        ensembles.append(ens)
    return rows, ensembles


def time_to_density(t, i, level: float = 0.5) -> float:
    """First time the curve reaches ``level``, linearly interpolated; inf if never."""
    t = np.asarray(t, dtype=float)
    i = np.asarray(i, dtype=float)
    above = np.flatnonzero(i >= level)
    if above.size == 0:
        return float("inf")
    k = above[0]
    if k == 0:
        return float(t[0])
    t0, t1, i0, i1 = t[k - 1], t[k], i[k - 1], i[k]
    return float(t0 + (level - i0) / (i1 - i0) * (t1 - t0))


@dataclass
class CurveCheck:
    label: str
    t_half: float
    final_i: float
    non_decreasing: bool
    saturating: bool


def _check_curve(label, ens: EnsembleStats, tail: int = 10, tol: float = 0.01) -> CurveCheck:
    i = ens.i_mean
    return CurveCheck(
        label=label,
        t_half=time_to_density(ens.t, i),
        final_i=float(i[-1]),
        non_decreasing=bool(np.all(np.diff(i) >= 0)),
        saturating=bool(i[-1] - i[max(0, len(i) - 1 - tail)] <= tol),
    )


ADAPT_SIZES = (500, 1000, 3000)
ADAPT_DEGREES = (3, 5, 8)
ADAPT_DENSITIES = (0.002, 0.006, 0.02)


def adaptability_suite(base: ExperimentConfig, workers: int | None = None, sizes=ADAPT_SIZES,
                       degrees=ADAPT_DEGREES, densities=ADAPT_DENSITIES):
    """Spreading curves under varied size, topology, mean degree and seed density.

    The topology comparison uses the even degree ``2 * floor(<k>/2)`` for both
    BA and WS.  Returns ``{experiment: [(label, EnsembleStats), ...]}`` and a
    matching ``{experiment: [CurveCheck, ...]}``.
    """
    if base.ra is None:
        base = base.replace(ra=0.85)
    even = max(2, 2 * int(base.mean_degree // 2))
    plan = {
        "size": [(f"n={n}", base.replace(n=n)) for n in sizes],
        "topology": [(t, base.replace(topology=t, mean_degree=float(even))) for t in ("BA", "WS")],
        "degree": [(f"k={k}", base.replace(mean_degree=float(k), topology="BA")) for k in degrees],
        "density": [(f"i0={d}", base.replace(i0=d)) for d in densities],
    }
    curves, checks = {}, {}
    for name, items in plan.items():
        curves[name] = [(label, run_ensemble(cfg, workers=workers)) for label, cfg in items]
        checks[name] = [_check_curve(label, ens) for label, ens in curves[name]]
    return curves, checks


def format_report(checks) -> str:
    lines = []
    for name, items in checks.items():
        lines.append(f"[{name}]")
        for c in items:
            lines.append(
                f"  {c.label:<10} t_half={c.t_half:.2f} final_i={c.final_i:.4f} "
                f"non_decreasing={c.non_decreasing} saturating={c.saturating}"
            )
    ok = all(c.non_decreasing and c.saturating for items in checks.values() for c in items)
    lines.append(f"all curves non-decreasing and saturating: {ok}")
    return "\n".join(lines) + "\n"


class EmpiricalDataError(ValueError):
    pass


@dataclass
class EmpiricalSeries:
    t_norm: np.ndarray
    density: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.t_norm = np.asarray(self.t_norm, dtype=float)
        self.density = np.asarray(self.density, dtype=float)
        if self.t_norm.shape != self.density.shape or self.t_norm.size == 0:
            raise EmpiricalDataError("series needs matching, non-empty time and density arrays")
        if np.any(np.diff(self.t_norm) <= 0):
            raise EmpiricalDataError("timestamps must be strictly increasing")
        if np.any(np.diff(self.density) < 0):
            raise EmpiricalDataError("cumulative densities must be non-decreasing")


def _minmax(x):
    lo, hi = x.min(), x.max()
    if hi == lo:
        raise EmpiricalDataError("cannot normalise a constant column")
    return (x - lo) / (hi - lo)


def ingest_empirical(source, label: str | None = None) -> EmpiricalSeries:
    """Read a ``t,count`` CSV of a cumulative spread and min-max normalise both axes."""
    if hasattr(source, "read"):
        rows = list(csv.DictReader(source))
        name = label or getattr(source, "name", "")
    else:
        with open(source, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        name = label or str(source)
    if len(rows) < 2:
        raise EmpiricalDataError("need at least two rows")
    try:
        t = np.array([float(r["t"]) for r in rows])
        c = np.array([float(r["count"]) for r in rows])
    except (KeyError, TypeError, ValueError) as exc:
        raise EmpiricalDataError(f"expected numeric columns t,count: {exc}") from None
    if np.any(np.diff(t) <= 0):
        raise EmpiricalDataError("timestamps must be strictly increasing")
    if np.any(np.diff(c) < 0):
        raise EmpiricalDataError("cumulative counts must be non-decreasing")
    return EmpiricalSeries(_minmax(t), _minmax(c), name)


def compare_to_empirical(sim, emp: EmpiricalSeries) -> float:
    """RMSE between the simulated mean density and an empirical series.

    ``sim`` is an :class:`EnsembleStats` or a ``(t, i)`` pair.  Simulated time
    is min-max normalised and interpolated onto the empirical grid.
    """
    if isinstance(sim, EnsembleStats):
        t, i = sim.t, sim.i_mean
    else:
        t, i = sim
    t = np.asarray(t, dtype=float)
    i = np.asarray(i, dtype=float)
    if t.size == 0:
        raise ValueError("empty simulated series")
    span = t.max() - t.min()
    tn = (t - t.min()) / span if span > 0 else np.zeros_like(t)
    pred = np.interp(emp.t_norm, tn, i)
    return float(np.sqrt(np.mean((pred - emp.density) ** 2)))
