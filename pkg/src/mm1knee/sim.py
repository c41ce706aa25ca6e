"""Seeded discrete-event simulation of the M/M/1/inf/FCFS queue.

The simulator is an empirical oracle for :mod:`mm1knee.core`. Per-customer
waiting times follow the Lindley recurrence

    W[0] = 0,  W[n] = max(0, W[n-1] + S[n-1] - T[n])

where ``T[n]`` is the gap between arrivals ``n-1`` and ``n``. With
``C[n] = sum(S[k-1] - T[k], k=1..n)`` the recurrence unrolls to
``W[n] = C[n] - min(C[0..n])``, which is what :func:`lindley_waits` evaluates.

Random numbers come from numpy's PCG64 bit generator seeded with the
configured 64-bit seed. Exponential variates are drawn by inverse transform
as ``-log(1 - u) / rate`` with ``u`` in ``[0, 1)``, so the logarithm never
sees zero. Inter-arrival gaps are drawn first, then service times.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats

from .core import QueueParameters, steady_state
from .errors import InvalidParameter, UnstableSystem

MIN_CUSTOMERS = 1000
MIN_PER_BATCH = 50
METRICS = ("utilization", "response_time", "residents", "queue_delay", "queue_length")


@dataclass(frozen=True)
class SimConfig:
    arrival_rate: float
    service_rate: float
    seed: int
    total_customers: int
    warmup_fraction: float = 0.1
    batch_count: int = 20

    def __post_init__(self):
        if not (self.arrival_rate > 0 and self.service_rate > 0):
            raise InvalidParameter("arrival_rate and service_rate must be > 0")
        if self.arrival_rate >= self.service_rate:
            raise UnstableSystem(
                f"arrival_rate={self.arrival_rate!r} >= service_rate={self.service_rate!r}"
            )
        if not 0 <= self.seed < 2**64:
            raise InvalidParameter(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.total_customers < MIN_CUSTOMERS:
            raise InvalidParameter(f"total_customers must be >= {MIN_CUSTOMERS}")
        if not 0.0 <= self.warmup_fraction <= 0.5:
            raise InvalidParameter("warmup_fraction must lie in [0, 0.5]")
        if self.batch_count < 2:
            raise InvalidParameter("batch_count must be >= 2")
        if self.total_customers * (1.0 - self.warmup_fraction) < self.batch_count * MIN_PER_BATCH:
            raise InvalidParameter(
                f"need at least {MIN_PER_BATCH} retained customers per batch"
            )


@dataclass(frozen=True)
class SimResult:
    empirical_utilization: float
    mean_response_time: float
    ci_half_width: float
    mean_residents: float
    mean_queue_delay: float
    mean_queue_length: float
    measured_throughput: float
    customers_served: int

    def as_dict(self) -> dict:
        return asdict(self)

    def metric(self, name: str) -> float:
        """Empirical counterpart of a :class:`SteadyStateMetrics` field."""
        return {
            "utilization": self.empirical_utilization,
            "response_time": self.mean_response_time,
            "residents": self.mean_residents,
            "queue_delay": self.mean_queue_delay,
            "queue_length": self.mean_queue_length,
        }[name]


def exponential_variates(rng: np.random.Generator, rate: float, size: int) -> np.ndarray:
    u = rng.random(size)
    return -np.log1p(-u) / rate


def lindley_waits(service: np.ndarray, gaps: np.ndarray) -> np.ndarray:
    """Queueing delays of successive FCFS customers.

    ``gaps[n]`` is the time between arrivals ``n-1`` and ``n``; ``gaps[0]``
    is ignored.
    """
    steps = service[:-1] - gaps[1:]
    c = np.concatenate(([0.0], np.cumsum(steps)))
    return c - np.minimum.accumulate(c)


def _overlap(start, end, t0, t1):
    return np.clip(np.minimum(end, t1) - np.maximum(start, t0), 0.0, None).sum()


def run_mm1(config: SimConfig) -> SimResult:
    """Simulate ``config.total_customers`` arrivals and summarise the tail.

    The first ``warmup_fraction`` of customers are discarded. Time averages
    cover the span from the first retained arrival to the last arrival, and
    count every customer present in that span.
    """
    n = config.total_customers
    rng = np.random.Generator(np.random.PCG64(config.seed))
    gaps = exponential_variates(rng, config.arrival_rate, n)
    service = exponential_variates(rng, config.service_rate, n)

    arrive = np.cumsum(gaps)
    wait = lindley_waits(service, gaps)
    start = arrive + wait
    depart = start + service

    k = int(config.warmup_fraction * n)
    t0, t1 = arrive[k], arrive[-1]
    span = t1 - t0

    response = (wait + service)[k:]
    batch_means = np.array([b.mean() for b in np.array_split(response, config.batch_count)])
    t_crit = stats.t.ppf(0.975, config.batch_count - 1)
    half_width = t_crit * batch_means.std(ddof=1) / np.sqrt(config.batch_count)

    departed = np.count_nonzero((depart >= t0) & (depart <= t1))
    return SimResult(
        empirical_utilization=float(_overlap(start, depart, t0, t1) / span),
        mean_response_time=float(response.mean()),
        ci_half_width=float(half_width),
        mean_residents=float(_overlap(arrive, depart, t0, t1) / span),
        mean_queue_delay=float(wait[k:].mean()),
        mean_queue_length=float(_overlap(arrive, start, t0, t1) / span),
        measured_throughput=float(departed / span),
        customers_served=int(n - k),
    )


@dataclass(frozen=True)
class MetricCheck:
    metric: str
    analytic: float
    empirical: float
    relative_error: float
    passed: bool


@dataclass(frozen=True)
class ValidationReport:
    rel_tolerance: float
    checks: tuple[MetricCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, metric: str) -> MetricCheck:
        for c in self.checks:
            if c.metric == metric:
                return c
        raise KeyError(metric)

    def as_dict(self) -> dict:
        return {
            "rel_tolerance": self.rel_tolerance,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }


def validate_against_analytic(
    result: SimResult, params: QueueParameters, rel_tolerance: float
) -> ValidationReport:
    """Compare simulated means with closed-form values, metric by metric.

    A metric whose analytic value is zero is compared in absolute terms.
    """
    if not rel_tolerance > 0:
        raise InvalidParameter(f"rel_tolerance must be > 0, got {rel_tolerance!r}")
    expected = steady_state(params).as_dict()
    checks = []
    for name in METRICS:
        a, e = expected[name], result.metric(name)
        err = abs(e - a) / abs(a) if a != 0 else abs(e)
        checks.append(MetricCheck(name, a, e, err, bool(err <= rel_tolerance)))
    return ValidationReport(rel_tolerance, tuple(checks))
