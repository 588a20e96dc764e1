"""
Recommendation accuracy and emotional stability
===============================================

Sweep the recommendation accuracy over the grid {0, 0.2, 0.5, 0.85, 1} and
compare how far the global mean emotion moves during a run.  Member ``i`` of
every ensemble starts from the same graph and the same spreaders, so the
initial mean emotion is shared by all rows.
"""

from cocoonsim import ExperimentConfig, ra_sweep

cfg = ExperimentConfig(n=1000, runs=10, ra=0.0, seed=0)
rows, ensembles = ra_sweep(cfg, [1.0, 0.85, 0.5, 0.2, 0.0])

print(f"{'RA':>5} {'initial':>9} {'min':>9} {'max':>9} {'range':>8}")
for row in rows:
    print(f"{row.ra:5.2f} {row.initial_m:+9.5f} {row.min_m:+9.5f} {row.max_m:+9.5f} {row.mean_difference:8.5f}")

# With RA = 1 no commenter is ever shown, so no emotion moves at all.
assert rows[0].mean_difference == 0.0
