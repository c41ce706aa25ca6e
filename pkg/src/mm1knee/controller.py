"""Review-period capacity controller that keeps throughput in its knee region.

At every review the controller compares the measured arrival rate with the
throughput-form knee region ``[mu - sqrt2 - 1, mu - sqrt2 + 1]`` of the
capacity in force. Inside the region it holds. Outside it, capacity jumps
to ``lam_hat + sqrt2``, which puts ``lam_hat`` at the centre of the new
region, clamped to ``[mu_min, mu_max]``. The region is two units wide, so
that width is the only hysteresis.

Reviews happen at the end of each window and the new capacity applies from
the next window on.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameter
from .geometry import (
    MIN_FEASIBLE_SERVICE_RATE,
    SQRT2,
    RegionLabel,
    _classify,
    load_knee_geometry,
    throughput_knee_geometry,
)


class Mode(str, enum.Enum):
    ANALYTIC = "analytic"
    STOCHASTIC = "stochastic"


class Action(str, enum.Enum):
    HOLD = "hold"
    RECENTER = "recenter"
    CLAMP_LOW = "clamp_low"
    CLAMP_HIGH = "clamp_high"


@dataclass(frozen=True)
class ControllerConfig:
    """Controller settings.

    ``settle_on_start`` makes the first review an initial sizing step: capacity
    is centred (and clamped) on the first measurement even when it already
    falls inside the initial knee region, and the step is logged with its
    Recenter/ClampLow/ClampHigh label even if the clamp leaves ``mu``
    unchanged. ``initial_mu`` then only serves the first window.
    """

    review_period: float
    mu_max: float
    initial_mu: float
    mu_min: float = MIN_FEASIBLE_SERVICE_RATE
    mode: Mode = Mode.ANALYTIC
    seed: int = 0
    settle_on_start: bool = True

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if not self.review_period > 0:
            raise InvalidParameter(f"review_period must be > 0, got {self.review_period!r}")
        if self.mu_min < MIN_FEASIBLE_SERVICE_RATE:
            raise InvalidParameter(
                f"mu_min must be >= sqrt(2)+1 = {MIN_FEASIBLE_SERVICE_RATE:.12g}, got {self.mu_min!r}"
            )
        if not self.mu_max > self.mu_min:
            raise InvalidParameter("mu_max must exceed mu_min")
        if not self.mu_min <= self.initial_mu <= self.mu_max:
            raise InvalidParameter("initial_mu must lie in [mu_min, mu_max]")
        if not 0 <= self.seed < 2**64:
            raise InvalidParameter("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class LoadTrace:
    """Piecewise-constant arrival rate; each rate holds until the next breakpoint."""

    times: tuple[float, ...]
    rates: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        object.__setattr__(self, "rates", tuple(float(r) for r in self.rates))
        if not self.times or len(self.times) != len(self.rates):
            raise InvalidParameter("trace needs matching, non-empty times and rates")
        if self.times[0] != 0.0:
            raise InvalidParameter("trace must start at t=0")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise InvalidParameter("trace times must be strictly increasing")
        if any(not (r >= 0 and math.isfinite(r)) for r in self.rates):
            raise InvalidParameter("trace rates must be finite and >= 0")

    @classmethod
    def constant(cls, rate: float) -> "LoadTrace":
        return cls((0.0,), (rate,))

    def rate_at(self, t: float) -> float:
        i = int(np.searchsorted(self.times, t, side="right")) - 1
        return self.rates[i]

    def segments(self, horizon: float):
        """Yield ``(start, end, rate)`` pieces clipped to ``[0, horizon)``."""
        ends = self.times[1:] + (math.inf,)
        for a, b, r in zip(self.times, ends, self.rates):
            if a >= horizon:
                break
            yield a, min(b, horizon), r

    def mean_rate(self, a: float, b: float) -> float:
        """Time-averaged rate over ``[a, b)``."""
        total = 0.0
        for s, e, r in self.segments(b):
            lo, hi = max(s, a), min(e, b)
            if hi > lo:
                total += r * (hi - lo)
        return total / (b - a)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "lambda"])
        for t, r in zip(self.times, self.rates):
            w.writerow([f"{t:.12g}", f"{r:.12g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "LoadTrace":
        rows = list(csv.reader(io.StringIO(text)))
        rows = [r for r in rows if r]
        if not rows or [c.strip() for c in rows[0]] != ["t", "lambda"]:
            raise InvalidParameter("trace CSV must start with header 't,lambda'")
        try:
            pairs = [(float(t), float(r)) for t, r in rows[1:]]
        except ValueError as exc:
            raise InvalidParameter(f"malformed trace row: {exc}") from None
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


@dataclass(frozen=True)
class ControllerEntry:
    interval: int
    lambda_estimate: float
    mu_before: float
    mu_after: float
    region_label: RegionLabel
    load_region_label: RegionLabel
    action: Action

    @property
    def in_knee(self) -> bool:
        return self.region_label is RegionLabel.KNEE


@dataclass
class ControllerLog:
    entries: list[ControllerEntry] = field(default_factory=list)

    @property
    def knee_residency_fraction(self) -> float:
        return self.residency()

    def residency(self, start: int = 0) -> float:
        """Fraction of intervals from ``start`` on whose estimate sat in the knee."""
        tail = self.entries[start:]
        if not tail:
            return 0.0
        return sum(e.in_knee for e in tail) / len(tail)

    def actions(self) -> list[Action]:
        return [e.action for e in self.entries]

    def as_dict(self) -> dict:
        return {
            "knee_residency_fraction": self.knee_residency_fraction,
            "entries": [
                {
                    "interval": e.interval,
                    "lambda_estimate": e.lambda_estimate,
                    "mu_before": e.mu_before,
                    "mu_after": e.mu_after,
                    "region_label": e.region_label.value,
                    "load_region_label": e.load_region_label.value,
                    "action": e.action.value,
                }
                for e in self.entries
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ControllerLog":
        return cls([
            ControllerEntry(
                interval=int(e["interval"]),
                lambda_estimate=float(e["lambda_estimate"]),
                mu_before=float(e["mu_before"]),
                mu_after=float(e["mu_after"]),
                region_label=RegionLabel(e["region_label"]),
                load_region_label=RegionLabel(e["load_region_label"]),
                action=Action(e["action"]),
            )
            for e in d["entries"]
        ])


def _recenter(lambda_estimate, config):
    target = lambda_estimate + SQRT2
    if target < config.mu_min:
        return config.mu_min, Action.CLAMP_LOW
    if target > config.mu_max:
        return config.mu_max, Action.CLAMP_HIGH
    return target, Action.RECENTER


def review(current_mu: float, lambda_estimate: float, config: ControllerConfig) -> tuple[float, Action]:
    """One control decision: hold inside the knee region, otherwise recenter.

    A clamped target equal to ``current_mu`` is reported as a hold, so a load
    beyond what the bounds can centre does not trigger a clamp every review.
    """
    if not config.mu_min <= current_mu <= config.mu_max:
        raise InvalidParameter(
            f"current_mu={current_mu!r} outside [{config.mu_min!r}, {config.mu_max!r}]"
        )
    if not lambda_estimate >= 0:
        raise InvalidParameter(f"lambda_estimate must be >= 0, got {lambda_estimate!r}")
    lo, hi = throughput_knee_geometry(current_mu).knee_region
    if lo <= lambda_estimate <= hi:
        return current_mu, Action.HOLD
    new_mu, action = _recenter(lambda_estimate, config)
    if new_mu == current_mu:
        # already pinned at the bound the load pushes against
        return current_mu, Action.HOLD
    return new_mu, action


def _load_label(mu, lam):
    U = lam / mu
    if U >= 1.0:
        return RegionLabel.EXPONENTIAL
    return _classify(U, *load_knee_geometry(1.0 / mu).knee_region)


def _poisson_counts(trace, n_windows, period, rng):
    # conditional on the count, Poisson arrival epochs on a piece are iid uniform
    horizon = n_windows * period
    epochs = []
    for a, b, r in trace.segments(horizon):
        k = rng.poisson(r * (b - a))
        epochs.append(rng.uniform(a, b, size=k))
    epochs = np.sort(np.concatenate(epochs)) if epochs else np.empty(0)
    edges = np.arange(n_windows + 1) * period
    counts, _ = np.histogram(epochs, bins=edges)
    return counts


def run_controller(trace: LoadTrace, config: ControllerConfig, horizon: float) -> ControllerLog:
    """Drive the controller over ``floor(horizon / review_period)`` windows.

    Analytic mode uses the exact time-averaged trace rate in each window.
    Stochastic mode generates Poisson arrivals at the trace rate and uses the
    window count divided by ``review_period``. A trailing partial window is
    not reviewed.
    """
    if not isinstance(trace, LoadTrace):
        raise InvalidParameter("trace must be a LoadTrace")
    T = config.review_period
    n = int(math.floor(horizon / T + 1e-9))
    if n < 1:
        raise InvalidParameter("horizon shorter than one review period")

    if config.mode is Mode.STOCHASTIC:
        rng = np.random.Generator(np.random.PCG64(config.seed))
        estimates = _poisson_counts(trace, n, T, rng) / T
    else:
        estimates = [trace.mean_rate(i * T, (i + 1) * T) for i in range(n)]

    log = ControllerLog()
    mu = config.initial_mu
    for i, lam_hat in enumerate(estimates):
        lam_hat = float(lam_hat)
        lo, hi = throughput_knee_geometry(mu).knee_region
        label = _classify(lam_hat, lo, hi)
        if i == 0 and config.settle_on_start:
            new_mu, action = _recenter(lam_hat, config)
        else:
            new_mu, action = review(mu, lam_hat, config)
        log.entries.append(
            ControllerEntry(i, lam_hat, mu, new_mu, label, _load_label(mu, lam_hat), action)
        )
        mu = new_mu
    return log
