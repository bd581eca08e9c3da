from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polys
from wittmod.checks import closure_violations, reduction_is_sound, top_generator, y_obstruction_degrees
from wittmod.exact import rank
from wittmod.modules import OmegaModule, act_witt_element
from wittmod.poly import Poly, TruncationError, coeff_vector, space_dim
from wittmod.structure import (
    ObstructionError,
    SubspaceBasis,
    a_for,
    compositions,
    extract_params,
    highest_from_lowest,
    irreducible_witness,
    is_irreducible_parameter,
    isomorphic,
    lowest_weight_check,
    member_w,
    quotient_dim,
    reduce_degree,
    reducibility_index,
    reduction_chain,
    sl_closure,
    spanning_set_rank,
    w_basis,
    w_generators,
    w_spanning_set,
    weyl_dimension,
    y_factor,
    y_product,
)
from wittmod.witt import sl_embed

LAM2 = (2, 3)
x1, x2 = Poly.var(2, 1), Poly.var(2, 2)
THIRD = Fraction(1, 3)


def test_y_factor_examples():
    a = Fraction(7, 5)
    assert y_factor(1, 0, a, 2) == Poly.const(2)
    assert y_factor(1, 2, -THIRD, 2) == x1**2 + THIRD * x1 - Fraction(2, 9)
    assert y_factor(2, 1, a, 2) == x2 + a


def test_y_product_examples():
    a = -THIRD
    assert y_product((0, 0), a) == Poly.const(2)
    assert y_product((1, 1), a) == (x1 - THIRD) * (x2 - THIRD)
    assert y_product((2, 0), a) == y_factor(1, 2, a, 2)


def test_compositions():
    assert compositions(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(compositions(3, 3)) == comb(5, 2)


def test_parameter_predicate():
    assert a_for(2, 2) == Fraction(-2, 3)
    assert reducibility_index(2, Fraction(-2, 3)) == 2
    assert reducibility_index(2, 0) == 0
    assert not is_irreducible_parameter(2, Fraction(-2, 3))
    assert is_irreducible_parameter(2, Fraction(-1, 4))
    assert is_irreducible_parameter(2, Fraction(1, 3))
    assert is_irreducible_parameter(3, Fraction(-1, 3))


def test_w_basis_dimensions():
    assert w_basis(2, 1, 2).dim == 3
    assert w_basis(2, 1, 1).dim == 0
    b0 = w_basis(2, 0, 1)
    assert b0.dim == 2
    assert b0 == SubspaceBasis.from_polys(2, 1, [x1, x2])


def test_w_basis_degree_three_rank_oracle():
    # oracle: rank of {Y(j), d1 Y(j), d2 Y(j)} computed directly from coefficient rows
    gens = w_generators(2, 1)
    rows = [coeff_vector(g * q, 3) for g in gens for q in (Poly.const(2), x1, x2)]
    assert len(rows) == 9
    assert rank(rows) == 7
    assert w_basis(2, 1, 3).dim == 7


@pytest.mark.parametrize("n,m,bound", [(2, 1, 3), (2, 2, 5), (3, 1, 4), (2, 0, 3)])
def test_spanning_set_rank(n, m, bound):
    size, r = spanning_set_rank(n, m, bound)
    assert size == len(w_spanning_set(n, m, bound))
    assert r == comb(n + bound, n) - comb(m + n, m)


def test_member_examples():
    basis = w_basis(2, 1, 3)
    y20 = y_product((2, 0), -THIRD)
    m = OmegaModule.from_a(2, -THIRD, LAM2)
    assert member_w(y20 * x2, basis)
    assert not member_w(Poly.const(2), basis)
    h = sl_embed(1, 1, 2) - sl_embed(2, 2, 2)
    assert member_w(act_witt_element(m, h, y20), basis)
    with pytest.raises(TruncationError):
        member_w(x1**4, basis)


@given(st.sampled_from(compositions(2, 2)), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_monomial_multiples_are_members(j, k):
    basis = w_basis(2, 1, 6)
    assert member_w(y_product(j, -THIRD).mul_monomial(k), basis)


@pytest.mark.parametrize(
    "n,m,expected", [(2, 0, 1), (2, 1, 3), (2, 2, 6), (2, 3, 10), (3, 0, 1), (3, 1, 4), (3, 2, 10)]
)
def test_quotient_dim(n, m, expected):
    assert quotient_dim(n, m) == expected == comb(m + n, m)


@pytest.mark.parametrize("n,m", [(2, 0), (2, 1), (2, 2), (3, 1)])
def test_generators_preserve_w(n, m):
    lam = (2, 3, 5)[:n]
    assert closure_violations(n, m, m + 2, lam) == []


@pytest.mark.parametrize("n,m", [(2, 1), (2, 2), (3, 1)])
def test_single_generator_closure(n, m):
    mod = OmegaModule.from_a(n, a_for(n, m), (2, 3, 5)[:n])
    for j in compositions(m + 1, n)[:2]:
        res = sl_closure(mod, [y_product(j, mod.a)], m + 1)
        assert res.stable
        assert res.basis == w_basis(n, m, m + 1)


@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(-1, 4), 2])
def test_one_is_cyclic(a):
    mod = OmegaModule.from_a(2, a, LAM2)
    res = sl_closure(mod, [Poly.const(2)], 3)
    assert res.stable
    assert res.basis.dim == space_dim(2, 3) == comb(5, 2)


def test_closure_of_zero_is_empty():
    mod = OmegaModule.from_a(2, Fraction(1, 2), LAM2)
    assert sl_closure(mod, [Poly.zero(2)], 3).basis.dim == 0


def test_closure_round_cap_is_inconclusive():
    mod = OmegaModule.from_a(2, Fraction(1, 2), LAM2)
    assert not sl_closure(mod, [Poly.const(2)], 3, max_rounds=1).stable


def test_reduce_degree_examples():
    mod = OmegaModule.from_a(2, Fraction(1, 2), LAM2)
    out = reduce_degree(mod, x1**2)
    assert out.total_degree() == 1
    assert out.coeff((1, 0)) == 5
    with pytest.raises(ValueError):
        reduce_degree(mod, Poly.const(2, 3))
    with pytest.raises(ValueError):
        reduce_degree(mod, Poly.zero(2))
    # leading coefficient d(d - 1 + 3a): at a = -1/3 it is -1 for d = 1 and 0 for d = 2
    third = OmegaModule.from_a(2, -THIRD, LAM2)
    assert reduce_degree(third, x1 + 7).total_degree() == 0
    with pytest.raises(ObstructionError) as err:
        reduce_degree(third, x1**2 + 5 * x1)
    assert err.value.degree == 2
    with pytest.raises(ObstructionError) as err:
        reduce_degree(OmegaModule.from_a(2, 0, LAM2), x1 + 7)
    assert err.value.degree == 1


def test_witness_obstruction_on_generator():
    mod = OmegaModule.from_a(2, -THIRD, LAM2)
    chain = reduction_chain(mod, y_product((2, 0), -THIRD))
    assert chain.obstruction is not None
    assert chain.obstruction.degree == 2
    assert not irreducible_witness(mod, y_product((2, 0), -THIRD))


@settings(max_examples=20)
@given(st.sampled_from([Fraction(1, 2), THIRD, 2, Fraction(-1, 4)]), polys(2, max_degree=5))
def test_witness_reaches_one(a, p):
    if p.total_degree() < 1:
        return
    mod = OmegaModule.from_a(2, a, LAM2)
    chain = reduction_chain(mod, p)
    assert chain.reached_constant
    assert chain.steps[-1] == Poly.const(2)
    degrees = [q.total_degree() for q in chain.steps]
    assert all(x > y for x, y in zip(degrees, degrees[1:]))


@settings(max_examples=15)
@given(st.sampled_from([Fraction(1, 2), Fraction(-1, 4), Fraction(-1, 3)]), polys(2, max_degree=2))
def test_reduction_stays_in_generated_submodule(a, p):
    if p.total_degree() < 1:
        return
    mod = OmegaModule.from_a(2, a, LAM2)
    assert reduction_is_sound(mod, p, p.total_degree())


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_obstruction_matches_parameter_predicate(n, m):
    lam = (2, 3, 5)[:n]
    assert y_obstruction_degrees(n, m, lam) == [m + 1] * len(w_generators(n, m))
    # nearby irreducible parameters: the same Y-type polynomials reduce to 1
    a = a_for(n, m) + Fraction(1, 7)
    assert is_irreducible_parameter(n, a)
    mod = OmegaModule.from_a(n, a, lam)
    for y in w_generators(n, m):
        assert reduction_chain(mod, y).reached_constant


@pytest.mark.parametrize("n,m", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_lowest_weight(n, m):
    weight = lowest_weight_check(n, m, (2, 3, 5)[:n])
    assert weight == (-m,) + (0,) * (n - 1)
    highest = highest_from_lowest(weight)
    assert highest == (0,) * (n - 1) + (m,)
    assert weyl_dimension([int(x) for x in highest]) == quotient_dim(n, m)


def test_weyl_dimension_oracle():
    # known sl(3) and sl(4) dimensions
    assert weyl_dimension([1, 0]) == 3
    assert weyl_dimension([1, 1]) == 8
    assert weyl_dimension([2, 0]) == 6
    assert weyl_dimension([0, 1, 0]) == 6
    assert weyl_dimension([1, 0, 1]) == 15


def test_extract_params_examples():
    assert extract_params(OmegaModule(2, Fraction(1, 2), LAM2)) == (Fraction(1, 2), (2, 3))
    assert extract_params(OmegaModule(3, 1, (1, -2, Fraction(1, 3))))[0] == 0
    assert extract_params(OmegaModule(2, 0, (3, 3))) != extract_params(OmegaModule(2, 0, (2, 3)))


def test_isomorphic_examples():
    m = OmegaModule.from_a(2, Fraction(1, 2), LAM2)
    assert isomorphic(m, OmegaModule.from_a(2, Fraction(1, 2), LAM2))
    assert not isomorphic(m, OmegaModule.from_a(2, THIRD, LAM2))
    assert not isomorphic(m, OmegaModule.from_a(2, Fraction(1, 2), (3, 2)))
    w1 = OmegaModule.from_a(2, -THIRD, LAM2)
    assert isomorphic(w1, w1, submodule=True)
    with pytest.raises(ValueError):
        isomorphic(m, m, submodule=True)


GRID = [
    OmegaModule.from_a(2, a, lam)
    for a in (Fraction(1, 2), -THIRD)
    for lam in ((2, 3), (Fraction(1, 2), -1))
]


def test_isomorphism_is_equivalence():
    for x in GRID:
        assert isomorphic(x, x)
        for y in GRID:
            assert isomorphic(x, y) == isomorphic(y, x) == (x == y)
            for z in GRID:
                if isomorphic(x, y) and isomorphic(y, z):
                    assert isomorphic(x, z)


def test_top_generator():
    assert top_generator(2, 1) == y_product((2, 0), -THIRD)
