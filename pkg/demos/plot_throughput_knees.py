"""
Knees of the delay vs throughput curves
=======================================

In rate form ``R = 1 / (mu - lam)``. Every curve has its knee at one unit
of spare capacity (``lam = mu - 1``, ``R = 1``), and its knee region is
always ``2`` wide. The region starts at non-negative throughput only when
``mu >= 1 + sqrt(2)``.
"""

from mm1knee import classify_throughput, knee_region_feasible_throughput, throughput_knee_geometry

for mu in (1, 2, 4, 8, 16):
    g = throughput_knee_geometry(mu)
    lo, hi = g.knee_region
    print(f"mu={mu:>2}: knee at lam={g.vertex[0]:5.2f}  region [{lo:6.3f}, {hi:6.3f}]  "
          f"latus length {g.latus_length:.4f}  feasible={knee_region_feasible_throughput(mu)}")

# %%
# A 4-customer/s server: at 1/s it is oversized, at 2.6/s it is in its knee
# region, and at 3.9/s it is one burst away from trouble.
for lam in (1.0, 2.6, 3.9):
    print(f"mu=4, lam={lam}: {classify_throughput(4, lam).value}")
