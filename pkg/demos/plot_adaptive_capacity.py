"""
Keeping a queue inside its knee region
======================================

When capacity can change, the knee region can follow the load. The
controller reviews the measured arrival rate every period. It holds while
the rate stays inside ``[mu - sqrt2 - 1, mu - sqrt2 + 1]`` and otherwise
moves capacity so the rate lands in the middle of the new region.
"""

from collections import Counter

from mm1knee import ControllerConfig, LoadTrace, run_controller

# A day in the life: quiet night, morning ramp, lunch peak, evening overload.
day = LoadTrace(
    times=(0, 300, 420, 540, 600, 780, 900, 1140),
    rates=(0.4, 2.0, 4.5, 7.0, 4.0, 9.5, 14.0, 1.0),
)

for mode in ("analytic", "stochastic"):
    config = ControllerConfig(review_period=10, mu_max=12, initial_mu=3, mode=mode, seed=1)
    log = run_controller(day, config, horizon=1440)
    counts = Counter(e.action.value for e in log.entries)
    print(f"{mode:>10}: knee residency {log.knee_residency_fraction:.2f}, actions {dict(counts)}")

# %%
# The analytic log around the overload: once the load exceeds what mu_max
# can centre, the controller pins capacity at the ceiling.
config = ControllerConfig(review_period=10, mu_max=12, initial_mu=3)
log = run_controller(day, config, horizon=1440)
for e in log.entries[86:94]:
    print(f"interval {e.interval:3d}: lam={e.lambda_estimate:5.2f} mu {e.mu_before:6.3f} -> "
          f"{e.mu_after:6.3f}  {e.region_label.value:>11} ({e.load_region_label.value} by load)  "
          f"{e.action.value}")

# %%
# Fixed capacity sized for the peak, for comparison.
static = ControllerConfig(review_period=10, mu_min=12, mu_max=12.000001, initial_mu=12,
                          settle_on_start=False)
print("\nstatic mu=12 knee residency:", round(run_controller(day, static, 1440).knee_residency_fraction, 2))
