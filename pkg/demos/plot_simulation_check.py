"""
Checking the closed forms against a simulation
==============================================

The simulator generates Poisson arrivals and exponential service times,
runs the Lindley recurrence, drops a warm-up prefix and reports time- and
customer-averaged metrics with a batch-means confidence interval.
"""

from mm1knee import QueueParameters, SimConfig, run_mm1, validate_against_analytic

for lam, mu in [(0.3, 1), (0.5, 1), (0.8, 1), (2, 4), (6, 8)]:
    result = run_mm1(SimConfig(lam, mu, seed=42, total_customers=200_000))
    report = validate_against_analytic(result, QueueParameters(lam, mu), 0.05)
    print(f"lam={lam}, mu={mu}: R = {result.mean_response_time:.3f} "
          f"+/- {result.ci_half_width:.3f}, all metrics within 5%: {report.passed}")
    for check in report.checks:
        print(f"    {check.metric:>14}: analytic {check.analytic:8.4f}  "
              f"simulated {check.empirical:8.4f}  rel.err {check.relative_error:.4f}")

# %%
# A deliberately wrong model is caught.
result = run_mm1(SimConfig(0.5, 1, seed=42, total_customers=200_000))
wrong = validate_against_analytic(result, QueueParameters(0.5, 2), 0.05)
print("\nmodel with mu=2 against a mu=1 queue passes:", wrong.passed)
