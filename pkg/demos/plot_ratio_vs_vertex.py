"""
Minimising R/U versus the hyperbola vertex
==========================================

Minimising ``R/U`` gives a knee at 50% utilization for a single server,
whatever the service time. The vertex knee moves with the service time and
agrees with the ratio knee only at ``S = 1/4``.
"""

import numpy as np

from mm1knee import load_knee_geometry, ratio_knee_utilization, response_time_of_utilization

ratio_knee = ratio_knee_utilization()
for S in (1.0, 0.25, 0.04, 0.01):
    vertex_U = load_knee_geometry(S).vertex[0]
    print(f"S={S:5.2f}: ratio knee U={ratio_knee:.2f}, vertex knee U={vertex_U:.2f}")

# %%
# Numerically, R/U on a fine grid bottoms out at 0.5 for any S.
U = np.linspace(0.01, 0.99, 9801)
for S in (1.0, 0.01):
    ratio = np.array([response_time_of_utilization(S, u) for u in U]) / U
    print(f"S={S}: argmin R/U on grid = {U[ratio.argmin()]:.3f}")
