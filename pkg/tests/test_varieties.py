from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tiltwalls.varieties import (P3, Q3, REGISTRY, V5, V22, ChernCharacter,
                                 VarietyMismatchError, dual, euler_pairing,
                                 get_variety, line_bundle, mu_slope, parse_registry,
                                 spinor_character, structure_sheaf, tensor_line,
                                 todd_character, twist)

import math

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


# ---------------------------------------------------------------- oracles

def exp_h_oracle(variety, k):
    """exp(k*H) summed term by term against the H-power table."""
    h_powers = [
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, variety.degree, 0),
        (0, 0, 0, variety.degree),
    ]
    total = [Fraction(0)] * 4
    fact = 1
    for i in range(4):
        if i:
            fact *= i
        for slot in range(4):
            total[slot] += Fraction(k ** i, fact) * h_powers[i][slot]
    return ChernCharacter.of(variety, *total)


def chi_p3_oracle(a, b):
    """chi(O(a), O(b)) on p3: binomial polynomial in b - a."""
    m = b - a
    return Fraction((m + 1) * (m + 2) * (m + 3), 6)


def chi_q3_oracle(n):
    """chi(O(n)) on the quadric: hypersurface Hilbert polynomial in P^4."""
    def c4(x):
        return Fraction((x + 4) * (x + 3) * (x + 2) * (x + 1), 24)
    return c4(n) - c4(n - 2)


def random_ch(variety, vals):
    return ChernCharacter.of(variety, *vals)


# ---------------------------------------------------------------- registry

def test_registry_contents():
    assert set(REGISTRY) == {"p3", "q3", "v5", "v22"}
    assert (P3.degree, P3.index) == (1, 4)
    assert (Q3.degree, Q3.index) == (2, 3)
    assert (V5.degree, V5.index) == (5, 2)
    assert (V22.degree, V22.index) == (22, 1)


def test_todd_data():
    assert P3.td1 == 2 and P3.td2 == Fraction(11, 6) and P3.td3 == 1
    assert Q3.td1 == Fraction(3, 2) and Q3.td2 == Fraction(13, 6)


@pytest.mark.parametrize("variety", [P3, Q3, V5, V22])
def test_chi_structure_sheaf_is_one(variety):
    o = structure_sheaf(variety)
    assert euler_pairing(o, o) == 1
    assert todd_character(variety).c3 == 1


def test_parse_registry_roundtrip():
    text = "name = P3\ndegree = 1\nindex = 4\ntodd2 = 11/6\n\n" \
           "name = Q3\ndegree = 2\nindex = 3\ntodd2 = 13/6\n"
    table = parse_registry(text)
    assert table["p3"] == P3
    assert table["q3"] == Q3


def test_parse_registry_rejects_bad_chi():
    text = "name = bogus\ndegree = 1\nindex = 4\ntodd2 = 1/2\n"
    with pytest.raises(ValueError):
        parse_registry(text)


def test_get_variety_unknown():
    with pytest.raises(ValueError):
        get_variety("p4")


# ---------------------------------------------------------------- twist

def test_twist_kills_own_slope():
    assert twist(line_bundle(P3, 1), 1).coeffs() == (1, 0, 0, 0)


def test_twist_identity():
    ch = ChernCharacter.of(P3, 2, -1, Fraction(1, 2), Fraction(5, 6))
    assert twist(ch, 0) == ch


def test_twist_matches_series_oracle():
    # e^{H/2} * e^{H} = e^{3H/2}
    got = twist(line_bundle(P3, 1), Fraction(-1, 2))
    assert got == exp_h_oracle(P3, Fraction(3, 2))
    assert got.coeffs() == (1, Fraction(3, 2), Fraction(9, 8), Fraction(9, 16))


@given(vals=st.tuples(rationals, rationals, rationals, rationals),
       b1=rationals, b2=rationals)
def test_twist_group_action(vals, b1, b2):
    ch = random_ch(P3, vals)
    assert twist(twist(ch, b1), b2) == twist(ch, b1 + b2)


@given(vals=st.tuples(rationals, rationals, rationals, rationals), b=rationals)
def test_twist_inverse(vals, b):
    ch = random_ch(Q3, vals)
    assert twist(twist(ch, b), -b) == ch


# ---------------------------------------------------------------- tensor_line

def test_tensor_line_p3():
    assert tensor_line(structure_sheaf(P3), 1).coeffs() == (1, 1, Fraction(1, 2), Fraction(1, 6))


def test_tensor_line_q3_uses_degree():
    got = tensor_line(structure_sheaf(Q3), 1)
    assert got == exp_h_oracle(Q3, 1)
    assert got.coeffs() == (1, 1, 1, Fraction(1, 3))


def test_tensor_line_zero_and_inverse():
    ch = ChernCharacter.of(Q3, 2, -3, 4, Fraction(-3, 2))
    assert tensor_line(ch, 0) == ch
    assert tensor_line(tensor_line(ch, 5), -5) == ch
    assert tensor_line(ch, 7).c0 == ch.c0


# ---------------------------------------------------------------- dual

def test_dual_signs():
    assert dual(line_bundle(P3, 1)).coeffs() == (1, -1, Fraction(1, 2), Fraction(-1, 6))


def test_dual_fixes_even_classes():
    ch = ChernCharacter.of(P3, 2, 0, -7, 0)
    assert dual(ch) == ch


@given(vals=st.tuples(rationals, rationals, rationals, rationals))
def test_dual_involution(vals):
    ch = random_ch(P3, vals)
    assert dual(dual(ch)) == ch


# ---------------------------------------------------------------- euler pairing

def test_chi_p3_line_bundles_against_binomial_oracle():
    for a in range(-3, 4):
        for b in range(-3, 4):
            got = euler_pairing(line_bundle(P3, a), line_bundle(P3, b))
            assert got == chi_p3_oracle(a, b), (a, b)


def test_chi_q3_against_hilbert_oracle():
    o = structure_sheaf(Q3)
    for n in range(-3, 4):
        assert euler_pairing(o, line_bundle(Q3, n)) == chi_q3_oracle(n), n
    assert euler_pairing(o, line_bundle(Q3, 1)) == 5


def test_chi_spinor_is_exceptional():
    s = spinor_character(Q3)
    assert euler_pairing(s, s) == 1
    # S^* = S(1) at character level
    assert dual(s) == tensor_line(s, 1)


def test_chi_variety_mismatch():
    with pytest.raises(VarietyMismatchError):
        euler_pairing(structure_sheaf(P3), structure_sheaf(Q3))


@given(vals=st.tuples(rationals, rationals, rationals, rationals),
       wals=st.tuples(rationals, rationals, rationals, rationals),
       k=st.integers(min_value=-4, max_value=4))
def test_chi_serre_twist_invariance(vals, wals, k):
    a, b = random_ch(P3, vals), random_ch(P3, wals)
    assert euler_pairing(tensor_line(a, k), tensor_line(b, k)) == euler_pairing(a, b)


# ---------------------------------------------------------------- mu slope

def test_mu_examples():
    assert mu_slope(line_bundle(P3, 1)) == 1
    assert mu_slope(spinor_character(Q3)) == Fraction(-1, 2)
    assert mu_slope(ChernCharacter.of(P3, 0, 0, 1, 0)) == math.inf


def test_lattice_validation():
    assert line_bundle(Q3, 1).is_lattice_point()
    assert spinor_character(Q3).is_lattice_point()
    assert not ChernCharacter.of(P3, Fraction(1, 2), 0, 0, 0).is_lattice_point()
