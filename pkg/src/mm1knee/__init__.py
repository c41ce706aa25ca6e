"""Knees of M/M/1 performance curves.

Closed-form steady-state metrics, the conic geometry of the response-time
hyperbolas (knee, focus, latus rectum, knee region), a seeded discrete-event
simulator used as an empirical check, and a capacity controller that keeps
throughput inside its knee region.
"""
from .controller import (
    Action,
    ControllerConfig,
    ControllerLog,
    LoadTrace,
    Mode,
    review,
    run_controller,
)
from .core import (
    QueueParameters,
    SteadyStateMetrics,
    network_delay,
    response_time_of_throughput,
    response_time_of_utilization,
    steady_state,
)
from .errors import InvalidParameter, KneeError, OutOfDomain, UnstableSystem
from .export import CurveForm, CurveSample, CurveSeries, Marker, sample_curve
from .geometry import (
    LoadKneeGeometry,
    RegionLabel,
    ThroughputKneeGeometry,
    capacity_for_knee_at,
    classify_load,
    classify_throughput,
    knee_region_feasible_load,
    knee_region_feasible_throughput,
    load_knee_geometry,
    ratio_knee_utilization,
    throughput_knee_geometry,
)
from .sim import SimConfig, SimResult, ValidationReport, run_mm1, validate_against_analytic

__version__ = "0.1.0"
