import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tiltwalls.exceptional import (ExceptionalCollection, ExceptionalObject,
                                   canonical_collection, ext_shift)
from tiltwalls.search import (SearchReport, double_heart_conditions, halfplane_exact,
                              halfplane_sweep, mutation_orbit, run_search)
from tiltwalls.stability import StabilityPoint
from tiltwalls.varieties import P3, Q3, ChernCharacter, line_bundle


def collection_with_charges(charges):
    """Quadruple of artificial classes whose Bridgeland charges at
    (beta, t, s) = (0, 1, 1/3) are exactly the given (re, im) pairs.

    At that point tau = c3 - t/2*c1 = c3 - c1/2 and rho = c2 - 1/2*c0, so
    (re, im) = (-c3 + c1/2, c2 - c0/2); picking c0 = c1 = 0 gives re = -c3,
    im = c2.
    """
    objects = tuple(
        ExceptionalObject(ChernCharacter.of(P3, 0, 0, im, -re)) for re, im in charges)
    return ExceptionalCollection(objects, P3, provenance="user")


POINT01 = StabilityPoint.of(0, 1)


# ---------------------------------------------------------------- conditions

def test_conditions_hold_in_region(p3_ext, region_sample):
    assert double_heart_conditions(p3_ext, region_sample)


def test_conditions_fail_high_up(p3_ext, outside_sample):
    assert not double_heart_conditions(p3_ext, outside_sample)


def test_conditions_reject_zero_member(p3_ext):
    broken = collection_with_charges([(0, 0), (1, 1), (1, 1), (1, 1)])
    with pytest.raises(ValueError):
        double_heart_conditions(broken, POINT01)


# ---------------------------------------------------------------- half-plane tests

def test_upper_halfplane_feasible_at_zero():
    collection = collection_with_charges([(-1, 1), (0, 1), (1, 1), (-2, 3)])
    feasible, hits = halfplane_exact(collection, POINT01)
    assert feasible and 0.0 in hits
    assert 0 in halfplane_sweep(collection, POINT01)


def test_antipodal_charges_infeasible():
    collection = collection_with_charges([(1, 1), (-1, -1), (0, 1), (1, 2)])
    feasible, _ = halfplane_exact(collection, POINT01)
    assert not feasible
    assert halfplane_sweep(collection, POINT01) == []


def test_boundary_ray_convention():
    # charge on the negative real axis is admitted at phi -> 0+, positive is not
    ok = collection_with_charges([(-1, 0), (0, 1), (-1, 1), (-1, 2)])
    feasible, _ = halfplane_exact(ok, POINT01)
    assert feasible
    bad = collection_with_charges([(1, 0), (0, 1), (-1, 1), (-1, 2)])
    feasible, _ = halfplane_exact(bad, POINT01)
    # (1, 0) sits on the boundary excluded for every phi in (0, 1]
    assert not feasible


def test_exact_feasible_at_region_sample(p3_ext, region_sample):
    feasible, hits = halfplane_exact(p3_ext, region_sample)
    assert feasible
    sweep = halfplane_sweep(p3_ext, region_sample, step_count=100)
    assert sweep  # the discrete scan agrees


def test_zero_charge_rejected():
    collection = collection_with_charges([(0, 1), (0, 1), (0, 1), (0, 1)])
    # make one member's charge vanish at the evaluation point
    broken = collection_with_charges([(0, 1)] * 3 + [(0, 0)])
    with pytest.raises(ValueError):
        halfplane_exact(broken, POINT01)
    with pytest.raises(ValueError):
        halfplane_sweep(broken, POINT01)


angles = st.floats(min_value=0.05, max_value=0.95)
spreads = st.lists(st.floats(min_value=0.01, max_value=0.93), min_size=4, max_size=4)


@given(base=angles, offsets=spreads)
@settings(max_examples=60)
def test_exact_implies_fine_sweep(base, offsets):
    # four charges strictly within an open half-plane rotated by base*pi
    charges = []
    for offset in offsets:
        phi = (base + 0.03 + offset * 0.9) * math.pi
        re = round(1000 * math.cos(phi))
        im = round(1000 * math.sin(phi))
        charges.append((Fraction(re), Fraction(im)))
    collection = collection_with_charges(charges)
    try:
        feasible, _ = halfplane_exact(collection, POINT01)
    except ValueError:
        return  # rounding produced a zero charge; nothing to test
    if feasible:
        assert halfplane_sweep(collection, POINT01, step_count=1000)


# ---------------------------------------------------------------- orbits

def test_orbit_depth_zero(p3_collection):
    orbit = mutation_orbit(p3_collection, 0)
    assert set(orbit) == {""}


def test_orbit_depth_one(p3_collection):
    orbit = mutation_orbit(p3_collection, 1)
    assert "" in orbit
    assert 1 <= len(orbit) <= 7
    assert all(word in ("", "L0", "L1", "L2", "R0", "R1", "R2") for word in orbit)


def test_orbit_monotone_in_depth(p3_collection):
    sizes = [len(mutation_orbit(p3_collection, d)) for d in range(3)]
    assert sizes == sorted(sizes)


def test_orbit_dedup_catches_inverses(p3_collection):
    orbit = mutation_orbit(p3_collection, 2)
    # L0,R0 reproduces the canonical collection, so no such key exists
    assert "L0,R0" not in orbit


# ---------------------------------------------------------------- full search

def test_search_negative_high_alpha():
    points = [StabilityPoint.of(0, 9), StabilityPoint.of(Fraction(1, 2), 9)]
    reports = run_search(P3, points, 2)
    assert all(isinstance(r, SearchReport) for r in reports)
    for report in reports:
        assert report.passing == ()
        assert report.explored == report.failing + len(report.passing)
        assert not report.numeric_necessary_only


def test_search_positive_in_region(region_sample):
    reports = run_search(P3, [region_sample], 0)
    assert len(reports) == 1
    assert any(word == "" for word, _ in reports[0].passing)


def test_search_deep_flag(region_sample):
    reports = run_search(P3, [region_sample], 3)
    assert reports[0].numeric_necessary_only


def test_search_report_json(region_sample):
    report = run_search(P3, [region_sample], 1)[0]
    data = report.to_json()
    assert data["explored"] == report.explored
    assert data["point"]["beta"] == "-1/2"
