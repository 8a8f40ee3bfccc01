from fractions import Fraction

import pytest
from conftest import assignments, polynomials
from hypothesis import given, settings

from hyperflow.derivations import Derivation
from hyperflow.poly import (
    ANY_WEIGHT,
    ONE,
    ZERO,
    Coordinate,
    Polynomial,
    b,
    derive,
    evaluate,
    homogeneous_weight,
    is_canonical,
    parse_polynomial,
    to_text,
)

half = Fraction(1, 2)


def test_coordinate_validation():
    assert Coordinate(2, 3).weight == 5
    for row, index in [(0, 1), (4, 1), (1, 2), (1, 0), (1, -1)]:
        with pytest.raises(ValueError):
            Coordinate(row, index)
    assert Coordinate.parse("b[3, 11]") == Coordinate(3, 11)
    with pytest.raises(ValueError):
        Coordinate.parse("b[1,2]")


def test_add_examples():
    assert b(1, 1) + (-b(1, 1)) == ZERO
    assert ZERO + b(2, 3) == b(2, 3)
    assert b(3, 1) * half + b(3, 1) * half == b(3, 1)
    assert not (b(1, 1) - b(1, 1)).terms


def test_mul_examples():
    p, q = b(1, 1) + b(2, 1), b(1, 1) - b(2, 1)
    assert p * q == b(1, 1) ** 2 - b(2, 1) ** 2
    assert p * ZERO == ZERO
    sq = b(2, 1) * b(2, 1)
    assert sq == b(2, 1) ** 2
    assert homogeneous_weight(sq) == 6


def test_evaluate_examples():
    assert evaluate(b(1, 1) ** 2, {Coordinate(1, 1): Fraction(3, 2)}) == Fraction(9, 4)
    assert evaluate(b(2, 3), {}) == 0
    assert evaluate(Polynomial.constant(7), {}) == 7


def test_homogeneous_weight_examples():
    assert homogeneous_weight(b(3, 1)) == 4
    assert homogeneous_weight(b(1, 1) * b(2, 1) + b(2, 3)) == 5
    assert homogeneous_weight(b(1, 1) + b(2, 1)) is None
    assert homogeneous_weight(ZERO) is ANY_WEIGHT


def test_derive_examples():
    d1 = Derivation(1).image
    assert derive(b(1, 1) ** 2, d1) == b(1, 1) * b(2, 1) * 2
    assert derive(Polynomial.constant(5), d1) == ZERO
    assert derive(b(1, 1) * b(2, 1), d1) == b(2, 1) ** 2 + b(1, 1) * b(3, 1)


def test_derive_missing_image_is_an_error():
    def partial_rule(c):
        if c.row == 1:
            return b(2, c.index)
        raise KeyError(c)

    with pytest.raises(KeyError):
        derive(b(1, 1) * b(3, 1), partial_rule)


def test_canonical_text():
    lam4 = b(3, 1) * half - b(1, 3) * 2 - b(1, 1) ** 2 * 3
    assert to_text(lam4) == "1/2*b[3,1] - 2*b[1,3] - 3*b[1,1]^2"
    assert to_text(ZERO) == "0"
    assert to_text(-b(2, 1)) == "-b[2,1]"
    assert to_text(ONE + b(1, 1)) == "1 + b[1,1]"
    # factors print with the larger coordinate first
    assert to_text(b(1, 1) * b(3, 1)) == "b[3,1]*b[1,1]"


@given(polynomials)
def test_text_round_trip(p):
    assert parse_polynomial(to_text(p)) == p


@settings(max_examples=1000)
@given(polynomials, polynomials, polynomials)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO
    for x in (p + q, p * q, p - r, -p):
        assert is_canonical(x)


@given(polynomials, polynomials)
def test_grading_is_additive(p, q):
    wp, wq = homogeneous_weight(p), homogeneous_weight(q)
    if isinstance(wp, int) and isinstance(wq, int):
        assert homogeneous_weight(p * q) == wp + wq


@settings(max_examples=300)
@given(polynomials, polynomials)
def test_leibniz_rule(p, q):
    d1 = Derivation(1).image
    assert derive(p * q, d1) == derive(p, d1) * q + p * derive(q, d1)
    assert derive(p + q, d1) == derive(p, d1) + derive(q, d1)


@given(polynomials, polynomials, assignments)
def test_evaluation_is_a_homomorphism(p, q, point):
    assert evaluate(p + q, point) == evaluate(p, point) + evaluate(q, point)
    assert evaluate(p * q, point) == evaluate(p, point) * evaluate(q, point)


def test_polynomials_are_immutable_values():
    p = b(1, 1) + b(2, 1)
    with pytest.raises(TypeError):
        p.terms[()] = Fraction(1)
    q = p * p
    assert p == b(1, 1) + b(2, 1)
    assert hash(q) == hash(b(1, 1) ** 2 + b(1, 1) * b(2, 1) * 2 + b(2, 1) ** 2)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        Polynomial({(): 0.5})
