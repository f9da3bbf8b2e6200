"""Exterior algebra: wedge, derivative, pairing, interior, Schouten."""

import itertools
from fractions import Fraction
from random import Random

import pytest

from involution_forge import (
    DegreeError,
    Form,
    MultiVector,
    RationalFunction,
    VarTable,
    differential,
    exterior_derivative,
    from_records,
    interior,
    pairing,
    parse_ratfun,
    schouten,
    wedge,
    wedge_power,
)
from helpers import (
    exterior_laws_suite,
    random_form,
    random_multivector,
    random_polynomial,
    schouten_jacobiator_suite,
)


@pytest.fixture(scope="module")
def table():
    return VarTable.build(["x1", "x2", "y1", "y2"])


def test_graded_wedge_laws_and_d_squared():
    exterior_laws_suite(n=30)


def test_schouten_square_tracks_coordinate_jacobiators():
    schouten_jacobiator_suite(n=50)


def test_differential_leibniz_on_functions(table):
    rng = Random(61)
    for _ in range(20):
        f = random_polynomial(table, rng)
        g = random_polynomial(table, rng)
        lhs = differential(f * g, table)
        rhs = differential(f, table) * g + differential(g, table) * f
        assert lhs == rhs


def test_pairing_is_the_coefficient_sum(table):
    rng = Random(63)
    for degree in (1, 2, 3):
        for _ in range(8):
            a = random_form(table, degree, rng)
            P = random_multivector(table, degree, rng)
            brute = RationalFunction.zero(table)
            for idx in itertools.combinations(range(4), degree):
                brute = brute + a.coefficient(idx) * P.coefficient(idx)
            assert pairing(a, P) == brute


def test_pairing_rejects_degree_mismatch(table):
    one = RationalFunction.one(table)
    a = Form(table, 1, {(0,): one})
    P = MultiVector(table, 2, {(0, 1): one})
    with pytest.raises(DegreeError):
        pairing(a, P)


def test_interior_on_basis_elements(table):
    one = RationalFunction.one(table)
    dx1 = Form(table, 1, {(0,): one})
    dx2 = Form(table, 1, {(1,): one})
    d1 = MultiVector(table, 1, {(0,): one})
    d2 = MultiVector(table, 1, {(1,): one})
    assert interior(d1, wedge(dx1, dx2)) == dx2
    assert interior(d2, wedge(dx1, dx2)) == -dx1
    assert interior(d2, dx1).is_zero()


def test_interior_is_adjoint_to_wedging(table):
    # <i_P a, Q> = <a, P ^ Q>: contraction fills the leading slots
    rng = Random(67)
    for p, q in ((1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)):
        for _ in range(6):
            P = random_multivector(table, p, rng)
            Q = random_multivector(table, q, rng)
            a = random_form(table, p + q, rng)
            assert pairing(interior(P, a), Q) == pairing(a, wedge(P, Q))


def test_wedge_power_matches_iterated_wedge(table):
    rng = Random(71)
    a = random_form(table, 2, rng)
    assert wedge_power(a, 0, Fraction(1)) == Form.scalar(
        table, RationalFunction.one(table))
    assert wedge_power(a, 1, Fraction(1)) == a
    assert wedge_power(a, 2, Fraction(1, 2)) == wedge(a, a) * Fraction(1, 2)


def test_schouten_gradings(table):
    rng = Random(73)
    for _ in range(10):
        X = random_multivector(table, 1, rng)
        Y = random_multivector(table, 1, rng)
        P = random_multivector(table, 2, rng)
        Q = random_multivector(table, 2, rng)
        # (1,1): the classical commutator of vector fields
        assert schouten(X, Y) == -schouten(Y, X)
        # (2,2): symmetric
        assert schouten(P, Q) == schouten(Q, P)
        # bilinear over rational constants
        c = Fraction(3)
        assert schouten(P * c, Q) == schouten(P, Q) * c
        assert schouten(P + Q, Q) == schouten(P, Q) + schouten(Q, Q)


def test_schouten_vector_fields_is_the_commutator(table):
    rng = Random(79)
    geo = range(4)
    for _ in range(10):
        X = random_multivector(table, 1, rng)
        Y = random_multivector(table, 1, rng)
        comps = {}
        for j in geo:
            entry = RationalFunction.zero(table)
            for i in geo:
                entry = (entry
                         + X.coefficient((i,)) * Y.coefficient((j,)).derivative(i)
                         - Y.coefficient((i,)) * X.coefficient((j,)).derivative(i))
            if not entry.is_zero():
                comps[(j,)] = entry
        assert schouten(X, Y) == MultiVector(table, 1, comps)


def test_schouten_known_squares(table):
    one = RationalFunction.one(table)
    x1 = parse_ratfun("x1", table)
    x3 = parse_ratfun("y1", table)
    # canonical structure: flat, square vanishes
    canonical = MultiVector(table, 2, {(0, 2): one, (1, 3): one})
    assert schouten(canonical, canonical).is_zero()
    # x3 d1^d2 + x1 d2^d3 + x1 d1^d3 fails Jacobi with Jacobiator x3,
    # so the square is (-2 x3) d1^d2^d3
    x3v = parse_ratfun("y1", table)
    P = MultiVector(table, 2, {(0, 1): x3v, (1, 2): x1, (0, 2): x1})
    expected = MultiVector(table, 3, {(0, 1, 2): x3v * Fraction(-2)})
    assert schouten(P, P) == expected


def test_records_round_trip(table):
    rng = Random(83)
    for degree in (1, 2, 3):
        a = random_form(table, degree, rng)
        assert from_records(table, degree, a.to_records()) == a
        P = random_multivector(table, degree, rng)
        assert from_records(table, degree, P.to_records(),
                            kind=MultiVector) == P
