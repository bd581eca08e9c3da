from fractions import Fraction

import pytest
from hypothesis import given

from conftest import indices, polys
from wittmod.exact import DimensionError
from wittmod.poly import (
    Poly,
    TruncationError,
    coeff_vector,
    degree_in,
    from_coeff_vector,
    monomials,
    parse_poly,
    shift,
    space_dim,
    total_degree,
)
from wittmod.structure import y_factor, y_product

d1, d2, d3 = (Poly.var(3, i) for i in (1, 2, 3))
x1, x2 = Poly.var(2, 1), Poly.var(2, 2)


def test_add_and_mul_examples():
    assert (x1 + (-x1)).is_zero()
    assert (x1 + 1) * (x1 - 1) == x1**2 - 1


def test_product_of_shifted_linear_factors():
    a = Fraction(-1, 3)
    got = y_factor(1, 1, a, 2) * y_factor(2, 1, a, 2)
    assert got == x1 * x2 - Fraction(1, 3) * x1 - Fraction(1, 3) * x2 + Fraction(1, 9)


def test_rank_mismatch():
    with pytest.raises(DimensionError):
        x1 + d1


def test_shift_examples():
    assert shift(x1, (1, 0)) == x1 - 1
    p = x1**2 * x2 + 3
    assert shift(p, (0, 0)) == p
    assert shift(x1**2, (2, 0)) == x1**2 - 4 * x1 + 4
    assert shift(Poly.const(2, 5), (3, -2)) == Poly.const(2, 5)


def test_degrees():
    assert total_degree(x1**2 * x2 + 1) == 3
    assert degree_in(x1**2 * x2, 2) == 1
    assert degree_in(x1**2 * x2, 1) == 2
    assert total_degree(y_product((2, 0), Fraction(-1, 3))) == 2


def test_coeff_vector_layout():
    assert monomials(2, 1) == ((0, 0), (1, 0), (0, 1))
    assert monomials(2, 2)[3:] == ((2, 0), (1, 1), (0, 2))
    assert coeff_vector(Poly.const(2), 1) == [1, 0, 0]
    assert coeff_vector(Poly.zero(2), 1) == [0, 0, 0]
    assert coeff_vector(x2, 1) == [0, 0, 1]
    assert from_coeff_vector([0, 0, 1], 2, 1) == x2


def test_coeff_vector_overflow():
    with pytest.raises(TruncationError):
        coeff_vector(x1**2, 1)


def test_space_dim_is_binomial():
    assert space_dim(2, 3) == 10
    assert space_dim(3, 2) == 10
    assert len(monomials(3, 4)) == space_dim(3, 4) == 35


def test_parse_and_format_round_trip():
    p = parse_poly("(3/2)*d1^2*d2 - d3 + 1", 3)
    assert p == Fraction(3, 2) * d1**2 * d2 - d3 + 1
    assert str(p) == "(3/2)*d1^2*d2 - d3 + 1"
    assert parse_poly(str(p), 3) == p
    assert parse_poly("(d1 - 1/3)*(d1 + 2/3)", 1) == y_factor(1, 2, Fraction(-1, 3), 1)
    assert str(Poly.zero(2)) == "0"


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_poly("d4", 3)
    with pytest.raises(ValueError):
        parse_poly("d1 +", 2)


def test_leading_term_is_graded_lex():
    p = x2**2 + x1 * x2 + 7
    assert p.leading() == ((1, 1), 1)
    assert (x1 + x2**2).leading() == ((0, 2), 1)


@given(polys(3), indices(3), indices(3))
def test_shift_composes(p, j, k):
    jk = tuple(a + b for a, b in zip(j, k))
    assert shift(shift(p, j), k) == shift(p, jk)


@given(polys(2), polys(2), indices(2))
def test_shift_is_ring_homomorphism(p, q, j):
    assert shift(p * q, j) == shift(p, j) * shift(q, j)
    assert shift(p + q, j) == shift(p, j) + shift(q, j)


@given(polys(3))
def test_shift_matches_substitution(p):
    # oracle: rebuild via products of (d_i - j_i) without the cached expansion
    j = (2, -1, 3)
    expected = Poly.zero(3)
    for exps, c in p.items():
        term = Poly.const(3, c)
        for i, e in enumerate(exps):
            term = term * (Poly.var(3, i + 1) - j[i]) ** e
        expected = expected + term
    assert shift(p, j) == expected


@given(polys(3, max_degree=4))
def test_coeff_vector_round_trip(p):
    assert from_coeff_vector(coeff_vector(p, 4), 3, 4) == p


@given(polys(2), polys(2), polys(2))
def test_mul_commutative_associative(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
