"""
Knees of the response-time vs utilization curves
================================================

For the M/M/1 queue ``R = S / (1 - U)``. The knee is the vertex of that
hyperbola, where the curve turns from slope < 1 to slope > 1. It depends
on the service time, so there is no universal 70% or 80% rule.
"""

import numpy as np

from mm1knee import (
    capacity_for_knee_at,
    classify_load,
    knee_region_feasible_load,
    load_knee_geometry,
    sample_curve,
)
from mm1knee.export import series_to_csv

# The family of service times plotted in most textbooks, from slow to fast.
family = [2, 1, 1 / 2, 1 / 4, 1 / 8, 1 / 16]

print(f"{'S':>8} {'knee U':>8} {'knee R':>8} {'region':>19} {'feasible':>9}")
for S in family:
    g = load_knee_geometry(S)
    lo, hi = g.knee_region
    print(f"{S:8.4f} {g.vertex[0]:8.4f} {g.vertex[1]:8.4f} "
          f"[{lo:7.4f}, {hi:7.4f}] {str(g.region_feasible):>9}")

# S = 2 puts the vertex at negative utilization: every operating point of
# such a server is already past its knee.
print("\nS=2, vertex in the region of interest:", load_knee_geometry(2).vertex_in_interest)

# %%
# Only fast servers have their whole knee region inside 0 <= U < 1.
for S in (0.25, 0.171572, 0.171574, 0.04):
    print(f"S={S}: knee region fully usable -> {knee_region_feasible_load(S)}")

# %%
# Capacity planning in reverse: pick the utilization you want to run at and
# get the service time that puts the knee there.
for target in (0.5, 0.7, 0.8, 0.9):
    S = capacity_for_knee_at(target)
    print(f"knee at U={target:.2f} needs S={S:.4f} (mu={1 / S:.1f})")

# %%
# Where does a given operating point sit?
for U in np.arange(0.1, 1.0, 0.2):
    print(f"S=0.04, U={U:.1f}: {classify_load(0.04, U).value}")

# %%
# Plot-ready data with the vertex and latus-rectum endpoints marked. Feed
# the CSV to any plotting tool, using a 1:1 aspect ratio.
series = sample_curve("load", 0.04, 0.0, 0.95, 0.05)
print()
print(series_to_csv(series))
