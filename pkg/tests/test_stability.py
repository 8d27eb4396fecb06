import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tiltwalls.stability import (Poly2, Side, StabilityPoint, WallPolynomial,
                                 bogomolov_Q, bridgeland_Z, curve_values,
                                 lambda_slope, nu, tilt_Z, wall_poly, wall_side)
from tiltwalls.varieties import (P3, Q3, ChernCharacter, line_bundle,
                                 structure_sheaf, tensor_line, twist)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=10)
betas = st.fractions(min_value=-3, max_value=3, max_denominator=8)
ts = st.fractions(min_value=Fraction(1, 16), max_value=3, max_denominator=16)


def ch_of(*vals, variety=P3):
    return ChernCharacter.of(variety, *vals)


def instanton_class(c, variety=P3):
    return ChernCharacter.of(variety, -2, 0, c, 0)


# ---------------------------------------------------------------- points

def test_point_validation():
    with pytest.raises(ValueError):
        StabilityPoint.of(0, 0)
    with pytest.raises(ValueError):
        StabilityPoint.of(0, 1, 0)
    p = StabilityPoint.of("1/2", "0.25")
    assert (p.beta, p.t, p.s) == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 3))


# ---------------------------------------------------------------- tilt charge

def test_tilt_Z_examples():
    p = StabilityPoint.of(0, 1)
    assert tilt_Z(structure_sheaf(P3), p) == (Fraction(1, 2), 0)
    assert tilt_Z(line_bundle(P3, 1), p) == (0, 1)
    torsion = ch_of(0, 0, 7, 0)
    for point in (p, StabilityPoint.of(-2, Fraction(5, 3))):
        assert tilt_Z(torsion, point) == (-7, 0)


def test_nu_examples():
    assert nu(line_bundle(P3, 1), StabilityPoint.of(0, 1)) == 0
    assert nu(structure_sheaf(P3), StabilityPoint.of(0, Fraction(1, 2))) == math.inf
    got = nu(line_bundle(P3, 1), StabilityPoint.of(Fraction(-1, 2), Fraction(1, 100)))
    # (9/8 - 1/200) / (3/2), evaluated exactly
    assert got == Fraction(56, 75)


@given(vals=st.tuples(rationals, rationals, rationals, rationals),
       scale=st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=6),
       beta=betas, t=ts)
def test_nu_scale_invariant(vals, scale, beta, t):
    ch = ch_of(*vals)
    p = StabilityPoint(beta, t)
    assert nu(ch, p) == nu(ch.scale(scale), p)


# ---------------------------------------------------------------- Bridgeland charge

def test_bridgeland_Z_examples():
    # the monad class has tau = 0 on the whole vertical axis
    for c in (1, 2, 3):
        for t in (Fraction(1, 7), 1, 4):
            tau, _ = bridgeland_Z(instanton_class(c), StabilityPoint.of(0, t))
            assert tau == 0
    tau, rho = bridgeland_Z(structure_sheaf(P3), StabilityPoint.of(0, Fraction(3, 5)))
    assert (tau, rho) == (0, Fraction(-3, 10))
    tau, rho = bridgeland_Z(line_bundle(P3, 1), StabilityPoint.of(0, Fraction(1, 3)))
    assert tau == 0 and rho == Fraction(1, 3)


def test_lambda_examples():
    p = StabilityPoint.of(0, Fraction(5, 4))
    assert lambda_slope(instanton_class(2), p) == 0
    assert lambda_slope(ch_of(-1, 0, 0, 0), p) == 0
    # (0, 1) lies on the rho = 0 curve of O(1): slope is +infinity there
    assert lambda_slope(line_bundle(P3, 1), StabilityPoint.of(0, 1)) == math.inf
    assert lambda_slope(line_bundle(P3, 1), StabilityPoint.of(0, 2)) == Fraction(5, 3)


@given(vals=st.tuples(rationals, rationals, rationals, rationals),
       scale=st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=6),
       beta=betas, t=ts)
def test_lambda_scale_invariant(vals, scale, beta, t):
    ch = ch_of(*vals)
    p = StabilityPoint(beta, t)
    assert lambda_slope(ch, p) == lambda_slope(ch.scale(scale), p)


# ---------------------------------------------------------------- wall polynomials

def test_wall_poly_antisymmetry_diagonal():
    ch = ch_of(1, 2, Fraction(3, 2), Fraction(-1, 6))
    assert wall_poly(ch, ch, Fraction(1, 3)).identically_zero
    assert wall_poly(ch, ch.scale(2), Fraction(1, 3)).identically_zero


def test_wall_poly_degrees():
    wall = wall_poly(line_bundle(P3, -2), ch_of(3, 1, Fraction(1, 2), 1), Fraction(1, 3))
    db, dt = wall.poly.degrees()
    assert db <= 5 and dt <= 2


def test_wall_poly_vertical_for_monad_class_vs_shifted_structure():
    # wall against the degree -1 generator class -ch(O): pure beta^3 monomial
    for c in (1, 2, 3):
        wall = wall_poly(instanton_class(c), -structure_sheaf(P3), Fraction(1, 3))
        assert set(wall.poly.coeffs) == {(3, 0)}
        assert wall.poly.coeffs[(3, 0)] == Fraction(c, 3)


@given(vals=st.tuples(rationals, rationals, rationals, rationals),
       wals=st.tuples(rationals, rationals, rationals, rationals))
@settings(max_examples=60)
def test_wall_poly_antisymmetric(vals, wals):
    e, f = ch_of(*vals), ch_of(*wals)
    s = Fraction(1, 3)
    assert wall_poly(e, f, s).poly == -wall_poly(f, e, s).poly


@given(vals=st.tuples(rationals, rationals, rationals, rationals),
       wals=st.tuples(rationals, rationals, rationals, rationals),
       gals=st.tuples(rationals, rationals, rationals, rationals),
       a=rationals, b=rationals)
@settings(max_examples=40)
def test_wall_poly_bilinear(vals, wals, gals, a, b):
    e, f, g = ch_of(*vals), ch_of(*wals), ch_of(*gals)
    s = Fraction(1, 3)
    combo = f.scale(a) + g.scale(b)
    lhs = wall_poly(e, combo, s).poly
    rhs = wall_poly(e, f, s).poly.scale(a) + wall_poly(e, g, s).poly.scale(b)
    assert lhs == rhs


@given(vals=st.tuples(rationals, rationals, rationals, rationals),
       wals=st.tuples(rationals, rationals, rationals, rationals),
       beta=betas, t=ts)
@settings(max_examples=100)
def test_wall_side_matches_lambda_comparison(vals, wals, beta, t):
    e, f = ch_of(*vals), ch_of(*wals)
    p = StabilityPoint(beta, t)
    tau_e, rho_e = bridgeland_Z(e, p)
    tau_f, rho_f = bridgeland_Z(f, p)
    side = wall_side(e, f, p)
    if rho_e != 0 and rho_f != 0:
        same = lambda_slope(e, p) == lambda_slope(f, p)
        assert (side == Side.ON) == same
        if rho_e > 0 and rho_f > 0 and side == Side.INSIDE:
            assert lambda_slope(e, p) < lambda_slope(f, p)


@given(vals=st.tuples(rationals, rationals, rationals, rationals),
       wals=st.tuples(rationals, rationals, rationals, rationals),
       beta=betas, t=ts)
@settings(max_examples=60)
def test_wall_poly_translation_covariance(vals, wals, beta, t):
    e, f = ch_of(*vals), ch_of(*wals)
    s = Fraction(1, 3)
    twisted = wall_poly(tensor_line(e, 1), tensor_line(f, 1), s)
    base = wall_poly(e, f, s)
    assert twisted.poly.evaluate(beta + 1, t) == base.poly.evaluate(beta, t)


def test_wall_side_examples():
    s = Fraction(1, 3)
    zero_wall = wall_poly(ch_of(1, 0, 0, 0), ch_of(2, 0, 0, 0), s)
    assert zero_wall.identically_zero
    triple = StabilityPoint.of(0, Fraction(1, 3))
    assert wall_side(instanton_class(1), line_bundle(P3, 1), triple) == Side.ON
    below = StabilityPoint.of(0, Fraction(1, 4))
    f_value = wall_poly(instanton_class(1), line_bundle(P3, 1), s).evaluate(below)
    expected = Side.INSIDE if f_value < 0 else Side.OUTSIDE
    assert wall_side(instanton_class(1), line_bundle(P3, 1), below) == expected


# ---------------------------------------------------------------- serialization

def test_wall_polynomial_json_roundtrip():
    wall = wall_poly(instanton_class(2), line_bundle(P3, 1), Fraction(1, 3))
    data = wall.to_json()
    assert data["identically_zero"] is False
    assert all(len(entry) == 4 for entry in data["coefficients"])
    back = WallPolynomial.from_json(data)
    assert back.poly == wall.poly


# ---------------------------------------------------------------- curves

def test_curve_values_examples():
    for t in (Fraction(1, 9), 1, 3):
        gamma, _ = curve_values(instanton_class(2), StabilityPoint.of(0, t))
        assert gamma == 0
    _, theta = curve_values(structure_sheaf(P3), StabilityPoint.of(0, Fraction(2, 7)))
    assert theta == Fraction(-1, 7)


@given(k=st.integers(min_value=-3, max_value=3), beta=betas, t=ts)
def test_theta_curve_of_line_bundle(k, beta, t):
    _, theta = curve_values(line_bundle(P3, k), StabilityPoint(beta, t))
    assert (theta == 0) == ((k - beta) ** 2 == t)


# ---------------------------------------------------------------- Bogomolov form

def test_bogomolov_line_bundle_saturation():
    for variety in (P3, Q3):
        for k in (-2, 0, 3):
            for point in (StabilityPoint.of(0, 1), StabilityPoint.of(Fraction(-7, 5), Fraction(2, 9))):
                assert bogomolov_Q(line_bundle(variety, k), point) == 0


def test_bogomolov_examples():
    p = StabilityPoint.of(Fraction(1, 2), Fraction(3, 4))
    torsion = ch_of(0, 0, 5, 0)
    assert bogomolov_Q(torsion, p) == 100
    inst = ChernCharacter.of(P3, 2, 0, -1, 0)
    for point in (p, StabilityPoint.of(0, 2), StabilityPoint.of(-1, Fraction(1, 9))):
        assert bogomolov_Q(inst, point) > 0
