"""Closed-form steady-state analytics for the M/M/1/inf/FCFS queue.

Two response-time curves are exposed:

* load form ``R(U; S) = S / (1 - U)`` with ``S > 0`` and ``0 <= U < 1``
* throughput form ``R(lam; mu) = 1 / (mu - lam)`` with ``0 <= lam < mu``

``network_delay`` is the load form under networking names
(delay ``D`` for ``R``, idle delay ``D0`` for ``S``).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameter, OutOfDomain, UnstableSystem


@dataclass(frozen=True)
class QueueParameters:
    """Operating point of a single-server queue.

    Only the rates are stored; ``service_time`` is always derived so it can
    never disagree with ``service_rate``.
    """

    arrival_rate: float
    service_rate: float

    def __post_init__(self):
        if not self.service_rate > 0:
            raise InvalidParameter(f"service_rate must be > 0, got {self.service_rate!r}")
        if not self.arrival_rate >= 0:
            raise InvalidParameter(f"arrival_rate must be >= 0, got {self.arrival_rate!r}")

    @classmethod
    def from_service_time(cls, arrival_rate: float, service_time: float) -> "QueueParameters":
        if not service_time > 0:
            raise InvalidParameter(f"service_time must be > 0, got {service_time!r}")
        return cls(arrival_rate, 1.0 / service_time)

    @property
    def service_time(self) -> float:
        return 1.0 / self.service_rate

    def stable(self) -> bool:
        return self.arrival_rate < self.service_rate


@dataclass(frozen=True)
class SteadyStateMetrics:
    utilization: float
    response_time: float
    residents: float
    queue_delay: float
    queue_length: float

    def as_dict(self) -> dict:
        return {
            "utilization": self.utilization,
            "response_time": self.response_time,
            "residents": self.residents,
            "queue_delay": self.queue_delay,
            "queue_length": self.queue_length,
        }


def steady_state(params: QueueParameters) -> SteadyStateMetrics:
    """Mean-value metrics of a stable M/M/1 queue.

    Raises:
        UnstableSystem: if ``arrival_rate >= service_rate``.
    """
    lam, mu = params.arrival_rate, params.service_rate
    if not params.stable():
        raise UnstableSystem(
            f"arrival_rate={lam!r} >= service_rate={mu!r}; queue grows without bound"
        )
    S = params.service_time
    # lam / mu, unlike lam * S, cannot round up to 1 when lam < mu
    U = lam / mu
    idle = 1.0 - U
    # product forms of Q and q avoid the cancellation in R - S and r - U
    return SteadyStateMetrics(
        utilization=U,
        response_time=S / idle,
        residents=U / idle,
        queue_delay=U * S / idle,
        queue_length=U * U / idle,
    )


def _check_load_args(S, U, name="S"):
    if not S > 0:
        raise InvalidParameter(f"{name} must be > 0, got {S!r}")
    if not 0.0 <= U < 1.0:
        raise OutOfDomain(f"utilization must lie in [0, 1), got {U!r}")


def response_time_of_utilization(S: float, U: float) -> float:
    """Mean response time as a function of utilization, ``S / (1 - U)``."""
    _check_load_args(S, U)
    return S / (1.0 - U)


def response_time_of_throughput(mu: float, lam: float) -> float:
    """Mean response time as a function of throughput, ``1 / (mu - lam)``."""
    if not mu > 0:
        raise InvalidParameter(f"service rate must be > 0, got {mu!r}")
    if not 0.0 <= lam < mu:
        raise OutOfDomain(f"throughput must lie in [0, {mu!r}), got {lam!r}")
    return 1.0 / (mu - lam)


def network_delay(D0: float, U: float) -> float:
    """End-to-end delay of a network at utilization ``U`` given idle delay ``D0``."""
    _check_load_args(D0, U, name="D0")
    return D0 / (1.0 - U)
