"""
Comparing a simulated curve with an observed one
================================================

Observed cascades arrive as cumulative counts over time.  Both axes are
min-max normalised and the simulated ensemble curve is interpolated onto the
observation times.  The CSV written here is synthetic; replace it with an
exported ``t,count`` series.
"""

import tempfile
from pathlib import Path

import numpy as np

from cocoonsim import ExperimentConfig, compare_to_empirical, ingest_empirical, run_ensemble

rng = np.random.default_rng(0)
hours = np.linspace(0, 14, 30)
counts = np.round(5000 / (1 + np.exp(-(hours - 4) * 1.1)) + rng.uniform(0, 20, hours.size))
counts = np.maximum.accumulate(counts)

path = Path(tempfile.mkdtemp()) / "cascade.csv"
path.write_text("t,count\n" + "".join(f"{t},{int(c)}\n" for t, c in zip(hours, counts)))

observed = ingest_empirical(path)
sim = run_ensemble(ExperimentConfig(n=1000, runs=5, ra=0.85, horizon=150))
print(f"RMSE between simulated and observed density: {compare_to_empirical(sim, observed):.3f}")
