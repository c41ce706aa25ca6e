"""Conic geometry of the M/M/1 response-time hyperbolas.

Both curves are rectangular hyperbolas with asymptotes ``R = 0`` and a
vertical line at saturation (``U = 1`` or ``lam = mu``). The knee is the
vertex of the upper branch, where the slope of the curve equals one. The
latus rectum through the focus cuts the branch at ``P`` and ``Q``; the
closed interval between them is the knee region.

Points are plain ``(x, R)`` tuples in curve units.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidParameter, OutOfDomain

SQRT2 = math.sqrt(2.0)
#: Largest service time whose load-form knee region lies fully in ``[0, 1)``.
MAX_FEASIBLE_SERVICE_TIME = 3.0 - 2.0 * SQRT2
#: Smallest service rate whose throughput-form knee region starts at ``lam >= 0``.
MIN_FEASIBLE_SERVICE_RATE = SQRT2 + 1.0

Point = tuple[float, float]


class RegionLabel(str, enum.Enum):
    FLAT = "flat"
    KNEE = "knee"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class LoadKneeGeometry:
    """Geometry of ``R = S / (1 - U)``; x coordinates are utilizations."""

    service_time: float
    center: Point
    vertex: Point
    focus: Point
    latus_p: Point
    latus_q: Point
    latus_length: float

    @property
    def knee_region(self) -> tuple[float, float]:
        return (self.latus_p[0], self.latus_q[0])

    @property
    def region_feasible(self) -> bool:
        return self.service_time <= MAX_FEASIBLE_SERVICE_TIME

    @property
    def vertex_in_interest(self) -> bool:
        return self.service_time <= 1.0

    def curve(self, U: float) -> float:
        return self.service_time / (1.0 - U)

    def latus_line(self, U: float) -> float:
        return U - 1.0 + 2.0 * math.sqrt(2.0 * self.service_time)

    def as_dict(self) -> dict:
        return {
            "form": "load",
            "service_time": self.service_time,
            "center": list(self.center),
            "vertex": list(self.vertex),
            "focus": list(self.focus),
            "latus_p": list(self.latus_p),
            "latus_q": list(self.latus_q),
            "latus_length": self.latus_length,
            "knee_region": list(self.knee_region),
            "region_feasible": self.region_feasible,
            "vertex_in_interest": self.vertex_in_interest,
        }


@dataclass(frozen=True)
class ThroughputKneeGeometry:
    """Geometry of ``R = 1 / (mu - lam)``; x coordinates are throughputs."""

    service_rate: float
    center: Point
    vertex: Point
    focus: Point
    latus_p: Point
    latus_q: Point
    latus_length: float

    @property
    def knee_region(self) -> tuple[float, float]:
        return (self.latus_p[0], self.latus_q[0])

    @property
    def region_feasible(self) -> bool:
        return self.service_rate >= MIN_FEASIBLE_SERVICE_RATE

    def curve(self, lam: float) -> float:
        return 1.0 / (self.service_rate - lam)

    def latus_line(self, lam: float) -> float:
        return lam - self.service_rate + math.sqrt(8.0)

    def as_dict(self) -> dict:
        return {
            "form": "throughput",
            "service_rate": self.service_rate,
            "center": list(self.center),
            "vertex": list(self.vertex),
            "focus": list(self.focus),
            "latus_p": list(self.latus_p),
            "latus_q": list(self.latus_q),
            "latus_length": self.latus_length,
            "knee_region": list(self.knee_region),
            "region_feasible": self.region_feasible,
        }


def _check_service_time(S):
    if not S > 0:
        raise InvalidParameter(f"service time must be > 0, got {S!r}")


def _check_service_rate(mu):
    if not mu > 0:
        raise InvalidParameter(f"service rate must be > 0, got {mu!r}")


def load_knee_geometry(S: float) -> LoadKneeGeometry:
    """Knee, focus and latus rectum of the load-form curve for service time ``S``.

    Geometry is returned for any ``S > 0``. For ``S > 1`` the vertex sits at
    negative utilization and ``vertex_in_interest`` is False.
    """
    _check_service_time(S)
    rs = math.sqrt(S)
    r2s = math.sqrt(2.0 * S)
    return LoadKneeGeometry(
        service_time=S,
        center=(1.0, 0.0),
        vertex=(1.0 - rs, rs),
        focus=(1.0 - r2s, r2s),
        latus_p=(1.0 - r2s - rs, r2s - rs),
        latus_q=(1.0 - r2s + rs, r2s + rs),
        latus_length=2.0 * r2s,
    )


def throughput_knee_geometry(mu: float) -> ThroughputKneeGeometry:
    """Knee, focus and latus rectum of the throughput-form curve for rate ``mu``."""
    _check_service_rate(mu)
    return ThroughputKneeGeometry(
        service_rate=mu,
        center=(mu, 0.0),
        vertex=(mu - 1.0, 1.0),
        focus=(mu - SQRT2, SQRT2),
        # grouped so the lower endpoint is exactly 0 at the feasibility bound
        latus_p=(mu - (SQRT2 + 1.0), SQRT2 - 1.0),
        latus_q=(mu - (SQRT2 - 1.0), SQRT2 + 1.0),
        latus_length=2.0 * SQRT2,
    )


def _classify(x, lo, hi):
    # knee interval is closed on both ends
    if x < lo:
        return RegionLabel.FLAT
    if x <= hi:
        return RegionLabel.KNEE
    return RegionLabel.EXPONENTIAL


def classify_load(S: float, U: float) -> RegionLabel:
    _check_service_time(S)
    if not 0.0 <= U < 1.0:
        raise OutOfDomain(f"utilization must lie in [0, 1), got {U!r}")
    return _classify(U, *load_knee_geometry(S).knee_region)


def classify_throughput(mu: float, lam: float) -> RegionLabel:
    _check_service_rate(mu)
    if not 0.0 <= lam < mu:
        raise OutOfDomain(f"throughput must lie in [0, {mu!r}), got {lam!r}")
    return _classify(lam, *throughput_knee_geometry(mu).knee_region)


def capacity_for_knee_at(U_target: float) -> float:
    """Service time that places the load-form knee at ``U_target``."""
    if not 0.0 <= U_target < 1.0:
        raise OutOfDomain(f"target utilization must lie in [0, 1), got {U_target!r}")
    return (1.0 - U_target) ** 2


def knee_region_feasible_load(S: float) -> bool:
    """True when the whole load-form knee region lies inside ``0 <= U < 1``."""
    _check_service_time(S)
    return S <= MAX_FEASIBLE_SERVICE_TIME


def knee_region_feasible_throughput(mu: float) -> bool:
    """True when the throughput-form knee region starts at ``lam >= 0``."""
    _check_service_rate(mu)
    return mu >= MIN_FEASIBLE_SERVICE_RATE


def ratio_knee_utilization() -> float:
    """Knee found by minimising ``R/U`` for one server.

    ``d(R/U)/dU = 0`` gives ``U = 1/2`` whatever the service time, which is
    why this knee disagrees with the vertex knee except at ``S = 1/4``.
    """
    return 0.5
