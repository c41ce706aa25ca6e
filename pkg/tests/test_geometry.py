import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import brentq

from mm1knee.core import response_time_of_throughput, response_time_of_utilization
from mm1knee.errors import InvalidParameter, OutOfDomain
from mm1knee.geometry import (
    MAX_FEASIBLE_SERVICE_TIME,
    MIN_FEASIBLE_SERVICE_RATE,
    RegionLabel,
    capacity_for_knee_at,
    classify_load,
    classify_throughput,
    knee_region_feasible_load,
    knee_region_feasible_throughput,
    load_knee_geometry,
    ratio_knee_utilization,
    throughput_knee_geometry,
)

service_times = st.floats(1e-4, 4.0)
service_rates = st.floats(0.05, 50.0)


def dist(a, b):
    return math.hypot(a[0] - b[0], a[1] - b[1])


# -- numerical oracles, independent of the closed forms --------------------

def knee_by_root_finding(S):
    """Abscissa where dR/dU = S/(1-U)^2 equals 1, on the upper branch."""
    return brentq(lambda U: S / (1.0 - U) ** 2 - 1.0, -50.0, 1.0 - 1e-12, xtol=1e-15)


def latus_by_polynomial(S):
    """Intersections of the latus line with R = S/(1-U), via numpy.roots.

    With x = 1 - U: S/x = -x + 2*sqrt(2S), i.e. x^2 - 2 sqrt(2S) x + S = 0.
    """
    xs = np.sort(np.roots([1.0, -2.0 * math.sqrt(2.0 * S), S]).real)
    return sorted(1.0 - xs)


def test_load_knee_at_quarter():
    assert load_knee_geometry(0.25).vertex == (0.5, 0.5)


def test_load_knee_at_unit_service_time():
    assert load_knee_geometry(1.0).vertex == (0.0, 1.0)


def test_load_knee_outside_interest():
    g = load_knee_geometry(2.0)
    assert g.vertex[0] == pytest.approx(-0.41421356, abs=1e-8)
    assert g.vertex[1] == pytest.approx(1.41421356, abs=1e-8)
    assert not g.vertex_in_interest
    assert load_knee_geometry(1.0).vertex_in_interest


def test_latus_endpoints_s004():
    g = load_knee_geometry(0.04)
    assert g.latus_p[0] == pytest.approx(0.51716, abs=1e-5)
    assert g.latus_q[0] == pytest.approx(0.91716, abs=1e-5)
    p_ref, q_ref = latus_by_polynomial(0.04)
    assert g.latus_p[0] == pytest.approx(p_ref, abs=1e-12)
    assert g.latus_q[0] == pytest.approx(q_ref, abs=1e-12)
    for pt in (g.latus_p, g.latus_q):
        assert pt[1] == pytest.approx(response_time_of_utilization(0.04, pt[0]), abs=1e-12)
        assert pt[1] == pytest.approx(g.latus_line(pt[0]), abs=1e-12)


@given(service_times)
def test_vertex_matches_root_finding(S):
    assert load_knee_geometry(S).vertex[0] == pytest.approx(knee_by_root_finding(S), abs=1e-9)


@given(service_times)
def test_load_conic_identities(S):
    g = load_knee_geometry(S)
    assert g.vertex[1] == pytest.approx(g.curve(g.vertex[0]), rel=1e-12)
    for pt in (g.latus_p, g.latus_q):
        assert pt[1] == pytest.approx(g.curve(pt[0]), rel=1e-12)
        assert pt[1] == pytest.approx(g.latus_line(pt[0]), rel=1e-12, abs=1e-12)
    assert dist(g.latus_p, g.latus_q) == pytest.approx(g.latus_length, abs=1e-9)
    assert dist(g.center, g.focus) == pytest.approx(
        math.sqrt(2.0) * dist(g.center, g.vertex), rel=1e-12
    )
    assert g.latus_p[0] < g.vertex[0] < g.latus_q[0]


@given(service_rates)
def test_throughput_conic_identities(mu):
    g = throughput_knee_geometry(mu)
    assert g.vertex[1] == pytest.approx(g.curve(g.vertex[0]), rel=1e-12)
    for pt in (g.latus_p, g.latus_q):
        assert pt[1] == pytest.approx(g.curve(pt[0]), rel=1e-12)
        assert pt[1] == pytest.approx(g.latus_line(pt[0]), abs=1e-12)
    assert dist(g.latus_p, g.latus_q) == pytest.approx(2 * math.sqrt(2), abs=1e-9)
    assert g.latus_length == 2 * math.sqrt(2)


def test_throughput_knee_examples():
    assert throughput_knee_geometry(16.0).vertex == (15.0, 1.0)
    g = throughput_knee_geometry(1.0)
    assert g.vertex == (0.0, 1.0)
    assert not g.region_feasible
    g = throughput_knee_geometry(4.0)
    assert g.latus_p == pytest.approx((1.58579, 0.41421), abs=1e-5)
    assert g.latus_q == pytest.approx((3.58579, 2.41421), abs=1e-5)


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_geometry_rejects_nonpositive(bad):
    with pytest.raises(InvalidParameter):
        load_knee_geometry(bad)
    with pytest.raises(InvalidParameter):
        throughput_knee_geometry(bad)
    with pytest.raises(InvalidParameter):
        knee_region_feasible_load(bad)
    with pytest.raises(InvalidParameter):
        knee_region_feasible_throughput(bad)


@pytest.mark.parametrize("U, label", [
    (0.3, RegionLabel.FLAT),
    (0.7, RegionLabel.KNEE),
    (0.95, RegionLabel.EXPONENTIAL),
])
def test_classify_load(U, label):
    assert classify_load(0.04, U) is label


@pytest.mark.parametrize("lam, label", [
    (1.0, RegionLabel.FLAT),
    (2.6, RegionLabel.KNEE),
    (3.9, RegionLabel.EXPONENTIAL),
])
def test_classify_throughput(lam, label):
    assert classify_throughput(4.0, lam) is label


def test_region_boundaries_are_knee():
    g = load_knee_geometry(0.04)
    assert classify_load(0.04, g.latus_p[0]) is RegionLabel.KNEE
    assert classify_load(0.04, g.latus_q[0]) is RegionLabel.KNEE
    t = throughput_knee_geometry(4.0)
    assert classify_throughput(4.0, t.latus_p[0]) is RegionLabel.KNEE
    assert classify_throughput(4.0, t.latus_q[0]) is RegionLabel.KNEE


def test_classify_domain():
    with pytest.raises(OutOfDomain):
        classify_load(0.04, 1.0)
    with pytest.raises(InvalidParameter):
        classify_load(0.0, 0.5)
    with pytest.raises(OutOfDomain):
        classify_throughput(4.0, 4.0)
    with pytest.raises(OutOfDomain):
        classify_throughput(4.0, -0.1)


def test_empty_flat_region_when_infeasible():
    # S = 0.25: lower endpoint is negative, so no utilization is flat
    assert load_knee_geometry(0.25).latus_p[0] < 0
    assert classify_load(0.25, 0.0) is RegionLabel.KNEE


_ORDER = {RegionLabel.FLAT: 0, RegionLabel.KNEE: 1, RegionLabel.EXPONENTIAL: 2}


@given(service_times)
def test_load_classification_monotone(S):
    labels = [_ORDER[classify_load(S, U)] for U in np.linspace(0, 0.9999, 400)]
    assert labels == sorted(labels)


@given(service_rates)
def test_throughput_classification_monotone(mu):
    labels = [_ORDER[classify_throughput(mu, x)] for x in np.linspace(0, mu * 0.9999, 400)]
    assert labels == sorted(labels)


@pytest.mark.parametrize("U, S", [(0.5, 0.25), (0.9, 0.01), (0.0, 1.0)])
def test_capacity_for_knee_at(U, S):
    got = capacity_for_knee_at(U)
    assert got == pytest.approx(S, rel=1e-12)
    assert load_knee_geometry(got).vertex[0] == pytest.approx(U, abs=1e-12)


def test_capacity_for_knee_domain():
    with pytest.raises(OutOfDomain):
        capacity_for_knee_at(1.0)
    with pytest.raises(OutOfDomain):
        capacity_for_knee_at(-0.1)


@given(st.floats(1e-6, 1.0))
def test_capacity_round_trip(S):
    assert capacity_for_knee_at(load_knee_geometry(S).vertex[0]) == pytest.approx(S, rel=1e-12, abs=1e-12)


def test_feasible_load_examples():
    assert knee_region_feasible_load(MAX_FEASIBLE_SERVICE_TIME)
    assert load_knee_geometry(MAX_FEASIBLE_SERVICE_TIME).latus_p[0] == pytest.approx(0.0, abs=1e-12)
    assert not knee_region_feasible_load(0.18)
    assert knee_region_feasible_load(0.01)


def test_feasible_throughput_examples():
    assert knee_region_feasible_throughput(MIN_FEASIBLE_SERVICE_RATE)
    assert throughput_knee_geometry(MIN_FEASIBLE_SERVICE_RATE).latus_p[0] == 0.0
    assert not knee_region_feasible_throughput(2.0)
    assert knee_region_feasible_throughput(16.0)


def test_feasibility_equivalence():
    rng = np.random.default_rng(3)
    for S in rng.uniform(1e-4, 1.0, 1000):
        assert knee_region_feasible_load(S) == (load_knee_geometry(S).latus_p[0] >= 0)
    for mu in rng.uniform(0.1, 10.0, 1000):
        assert knee_region_feasible_throughput(mu) == (throughput_knee_geometry(mu).latus_p[0] >= 0)


def test_ratio_knee():
    assert ratio_knee_utilization() == 0.5
    assert load_knee_geometry(0.25).vertex[0] == ratio_knee_utilization()
    assert load_knee_geometry(0.01).vertex[0] == pytest.approx(0.9, abs=1e-15)


def test_ratio_knee_minimises_r_over_u():
    # d(R/U)/dU = 0 located numerically for a few service times
    for S in (0.01, 0.25, 0.7):
        U = brentq(lambda u: (S / ((1 - u) * u)) * ((2 * u - 1) / ((1 - u) * u)), 0.01, 0.99)
        assert U == pytest.approx(ratio_knee_utilization(), abs=1e-12)


def test_slope_at_vertex():
    rng = np.random.default_rng(5)
    h = 1e-6
    for S in rng.uniform(1e-3, 1.0, 50):
        U = load_knee_geometry(S).vertex[0]
        slope = (response_time_of_utilization(S, U + h) - response_time_of_utilization(S, U - h)) / (2 * h)
        assert slope == pytest.approx(1.0, abs=1e-6)


def test_load_and_throughput_knees_are_distinct():
    # load-form knee at U = 1 - sqrt(S) maps to lam = (1 - sqrt(S)) / S,
    # throughput-form knee is lam = mu - 1; they only meet at S = 1
    S = 0.25
    lam_from_load = load_knee_geometry(S).vertex[0] / S
    lam_from_thru = throughput_knee_geometry(1 / S).vertex[0]
    assert lam_from_load == pytest.approx(2.0)
    assert lam_from_thru == pytest.approx(3.0)
