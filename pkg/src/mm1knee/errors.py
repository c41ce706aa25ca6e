"""Exception types raised across the package."""


class KneeError(ValueError):
    """Base class for domain errors."""


class UnstableSystem(KneeError):
    """Arrival rate at or above service rate; no steady state exists."""


class OutOfDomain(KneeError):
    """An argument lies outside the region where a curve is defined."""


class InvalidParameter(KneeError):
    """A structural parameter (service time, rate, count) is invalid."""
