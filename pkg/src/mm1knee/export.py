"""Curve sampling and plot-ready serialization.

Series go out as CSV (``x,R,marker``) or JSON. Single records go out as
flat JSON objects. Every number is written with 12 significant digits.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import InvalidParameter, OutOfDomain
from .geometry import (
    LoadKneeGeometry,
    ThroughputKneeGeometry,
    load_knee_geometry,
    throughput_knee_geometry,
)

DIGITS = 12


class CurveForm(str, enum.Enum):
    LOAD = "load"
    THROUGHPUT = "throughput"


class Marker(str, enum.Enum):
    VERTEX = "vertex"
    LATUS_P = "latus_p"
    LATUS_Q = "latus_q"


@dataclass(frozen=True)
class CurveSample:
    x: float
    y: float
    marker: Optional[Marker] = None


@dataclass(frozen=True)
class CurveSeries:
    form: CurveForm
    parameter: float
    samples: tuple[CurveSample, ...]
    geometry: Union[LoadKneeGeometry, ThroughputKneeGeometry]

    def markers(self) -> dict[Marker, CurveSample]:
        return {s.marker: s for s in self.samples if s.marker is not None}


def rounded(x: float) -> float:
    return float(f"{x:.{DIGITS}g}")


def _round_tree(obj):
    if isinstance(obj, float):
        return rounded(obj)
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    return obj


def to_json(obj: dict) -> str:
    return json.dumps(_round_tree(obj), indent=2) + "\n"


def sample_curve(form, parameter: float, x_from: float, x_to: float, step: float) -> CurveSeries:
    """Sample the load or throughput curve on a regular grid.

    The vertex and both latus-rectum endpoints are added at their exact
    closed-form abscissae whenever they fall inside ``[x_from, x_to]``; a
    grid point that coincides with a marker is replaced by it.

    Raises:
        OutOfDomain: if the range leaves ``[0, 1)`` (load) or ``[0, mu)``
            (throughput), including ranges that reach the asymptote.
        InvalidParameter: if ``step <= 0`` or the curve parameter is invalid.
    """
    form = CurveForm(form)
    if form is CurveForm.LOAD:
        geom = load_knee_geometry(parameter)
        limit = 1.0
    else:
        geom = throughput_knee_geometry(parameter)
        limit = parameter
    if not step > 0:
        raise InvalidParameter(f"step must be > 0, got {step!r}")
    if not 0.0 <= x_from <= x_to < limit:
        raise OutOfDomain(
            f"range [{x_from!r}, {x_to!r}] must lie within [0, {limit!r})"
        )

    n = int(math.floor((x_to - x_from) / step + 1e-9)) + 1
    grid = [x_from + i * step for i in range(n)]
    grid = [x for x in grid if x <= x_to] or [x_from]

    marked = []
    for marker, point in (
        (Marker.VERTEX, geom.vertex),
        (Marker.LATUS_P, geom.latus_p),
        (Marker.LATUS_Q, geom.latus_q),
    ):
        if x_from <= point[0] <= x_to:
            marked.append(CurveSample(point[0], point[1], marker))

    eps = 1e-9 * step
    samples = [
        CurveSample(x, geom.curve(x))
        for x in grid
        if all(abs(x - m.x) > eps for m in marked)
    ]
    samples = tuple(sorted(samples + marked, key=lambda s: s.x))
    return CurveSeries(form, parameter, samples, geom)


def series_to_csv(series: CurveSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "R", "marker"])
    for s in series.samples:
        w.writerow([f"{s.x:.{DIGITS}g}", f"{s.y:.{DIGITS}g}", s.marker.value if s.marker else ""])
    return buf.getvalue()


def samples_from_csv(text: str) -> tuple[CurveSample, ...]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != ["x", "R", "marker"]:
        raise InvalidParameter(f"unexpected CSV header {header!r}")
    return tuple(
        CurveSample(float(x), float(y), Marker(m) if m else None)
        for x, y, m in reader
    )


def series_as_dict(series: CurveSeries) -> dict:
    return {
        "form": series.form.value,
        "parameter": series.parameter,
        "samples": [
            {"x": s.x, "y": s.y, "marker": s.marker.value if s.marker else None}
            for s in series.samples
        ],
        "geometry": series.geometry.as_dict(),
    }


def series_to_json(series: CurveSeries) -> str:
    return to_json(series_as_dict(series))


def series_from_json(text: str) -> CurveSeries:
    d = json.loads(text)
    form = CurveForm(d["form"])
    geom = (load_knee_geometry if form is CurveForm.LOAD else throughput_knee_geometry)(
        d["parameter"]
    )
    samples = tuple(
        CurveSample(s["x"], s["y"], Marker(s["marker"]) if s["marker"] else None)
        for s in d["samples"]
    )
    return CurveSeries(form, d["parameter"], samples, geom)
