"""
A single spreading run
======================

Build a scale-free network with the default parameters, seed a handful of
spreaders and follow the spreader density and the mean emotion over time.
"""

import numpy as np

from cocoonsim import ExperimentConfig, comment_network_summary, emotion_range, run

# Defaults: N=3000, <k>=5, i0=0.006, lambda=0.1, theta0=8.62e-3.
# The recommendation accuracy has no default and is always stated.
cfg = ExperimentConfig(ra=0.85, seed=1)
graph = cfg.make_graph(cfg.seed)
traj = run(graph, cfg.spread_params(), cfg.seed)

for t in (0, 10, 25, 50, 100, len(traj) - 1):
    print(f"t={t:3d}  i={traj.i[t]:.3f}  <m>={traj.mean_m[t]:+.5f}")

# The change in mean emotion is largest while the information is spreading.
early = np.nanmax(np.abs(traj.delta_m[1:60]))
late = np.nanmax(np.abs(traj.delta_m[120:])) if len(traj) > 121 else 0.0
print(f"largest |delta <m>| in steps 1-60: {early:.2e}, after step 120: {late:.2e}")

r = emotion_range(traj)
print(f"<m>: initial {r.initial:+.5f}, min {r.minimum:+.5f}, max {r.maximum:+.5f}, range {r.difference:.5f}")

# The comment layer that grew during the run; silent nodes are dropped.
s = comment_network_summary(graph, drop_silent=True)
print(f"comment network: {s.node_count} nodes, {s.edge_count} edges, <k>={s.mean_degree:.2f}, "
      f"k_max={max(s.degree_histogram)}")
for low, high, count in s.log_histogram:
    print(f"  degree {low:4d}-{high:<4d} {count}")
