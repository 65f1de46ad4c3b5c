"""
多変数多項式のテスト
"""

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fpkz.errors import ArityMismatch, DomainError, ModulusMismatch, ZeroPolynomial
from fpkz.mpoly import (
    Poly,
    VecPoly,
    difference,
    divide_by_difference,
    extract_x_coeff,
    leading_term,
    partial_derivative,
    pow_binomial,
    validate_sigma,
)

P = 7


def z(k: int, arity: int = 3, p: int = P) -> Poly:
    return Poly.variable(k, p, arity)


terms = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)),
    st.integers(0, P - 1),
    max_size=6,
)


def poly_of(mapping) -> Poly:
    return Poly(P, 2, mapping)


def test_zero_coefficients_are_dropped():
    f = Poly(P, 2, {(1, 0): 7, (0, 1): 3})
    assert f.support() == {(0, 1)}
    assert (f - f).is_zero()


def test_arithmetic():
    f = z(0) + z(1)
    assert f * f == z(0) ** 2 + z(0) * z(1) * 2 + z(1) ** 2
    assert 3 - f == -f + 3
    assert (f ** 7) == z(0) ** 7 + z(1) ** 7  # Frobenius


def test_mismatches_raise():
    with pytest.raises(ModulusMismatch):
        Poly.variable(0, 5, 2) + Poly.variable(0, 7, 2)
    with pytest.raises(ArityMismatch):
        Poly.variable(0, 5, 2) + Poly.variable(0, 5, 3)
    with pytest.raises(DomainError):
        Poly.monomial((1, -1), 1, P)


@given(terms, terms)
def test_product_is_commutative(a, b):
    f, g = poly_of(a), poly_of(b)
    assert f * g == g * f


@given(terms, terms, terms)
def test_distributive(a, b, c):
    f, g, h = poly_of(a), poly_of(b), poly_of(c)
    assert f * (g + h) == f * g + f * h


@given(terms, st.tuples(st.integers(0, P - 1), st.integers(0, P - 1)))
def test_evaluation_is_a_ring_map(a, point):
    f = poly_of(a)
    g = f * f + f
    assert g.evaluate(point) == f.evaluate(point) * f.evaluate(point) + f.evaluate(point)


def test_leading_term_depends_on_sigma():
    f = Poly.from_terms(P, 3, [((2, 0, 0), 1), ((0, 3, 0), 2), ((1, 1, 1), 5)])
    assert leading_term(f).exponents == (2, 0, 0)
    assert leading_term(f, (2, 1, 3)).exponents == (0, 3, 0)
    assert leading_term(f, (3, 1, 2)).exponents == (1, 1, 1)
    assert leading_term(f, (3, 1, 2)).coeff == 5


def test_vector_leading_term():
    v = VecPoly([z(0, 2) + z(1, 2), z(1, 2).scale(3)])
    lt = leading_term(v)
    assert lt.exponents == (1, 0)
    assert lt.coeff_vector() == (1, 0)


def test_leading_term_of_zero_raises():
    with pytest.raises(ZeroPolynomial):
        leading_term(Poly.zero(P, 2))


def test_invalid_sigma():
    with pytest.raises(DomainError):
        validate_sigma((1, 1, 2), 3)


def test_partial_derivative_vanishes_at_p():
    f = z(0) ** 7 + z(0) ** 3 * z(1)
    assert partial_derivative(f, 0) == (z(0) ** 2 * z(1)).scale(3)
    assert partial_derivative(f, 0, order=0) == f
    assert partial_derivative(z(0) ** 3, 0, order=3) == Poly.constant(6, P, 3)


def test_pow_binomial_matches_power():
    arity = 2
    expected = (Poly.variable(1, P, arity) - Poly.variable(0, P, arity)) ** 5
    assert pow_binomial(1, 0, 5, P, arity) == expected


def test_extract_x_coeff():
    f = Poly.from_terms(P, 2, [((1, 2), 3), ((4, 2), 1), ((0, 1), 2)])
    assert extract_x_coeff(f, 2) == Poly.from_terms(P, 1, [((1,), 3), ((4,), 1)])


def test_divide_by_difference():
    d = difference(0, 1, P, 2)
    f = d * d * (Poly.variable(0, P, 2) + 3)
    q, exact = divide_by_difference(f, 0, 1)
    assert exact and q == d * (Poly.variable(0, P, 2) + 3)
    _, exact = divide_by_difference(f + 1, 0, 1)
    assert not exact


def test_text_rendering():
    f = Poly.from_terms(5, 2, [((1, 0), 4), ((0, 1), 1)])
    assert f.to_text() == "4*z1 + z2"
    assert Poly.zero(5, 2).to_text() == "0"


def test_dict_is_sorted_descending():
    f = Poly.from_terms(5, 2, [((0, 2), 1), ((2, 0), 1), ((1, 1), 1)])
    assert [t["exp"] for t in f.to_dict()["terms"]] == [[2, 0], [1, 1], [0, 2]]


def test_slots():
    f = Poly.from_terms(P, 2, [((1, 2), 3)])
    g = f.add_slot()
    assert g.arity == 3
    assert g.drop_slot() == f
    with pytest.raises(DomainError):
        (g * Poly.variable(2, P, 3)).drop_slot()


@given(terms, terms)
@settings(max_examples=40, deadline=None, derandomize=True)
def test_product_matches_sympy(a, b):
    z1, z2 = sympy.symbols("z1 z2")

    def to_sympy(mapping):
        expr = sum((c * z1 ** e1 * z2 ** e2 for (e1, e2), c in mapping.items()), sympy.Integer(0))
        return sympy.Poly(expr, z1, z2, modulus=P)

    expected = (to_sympy(a) * to_sympy(b)).as_dict()
    expected = {k: int(v) % P for k, v in expected.items() if int(v) % P}
    assert dict(poly_of(a) * poly_of(b)) == expected


nonzero_terms = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)),
    st.integers(1, P - 1),
    min_size=1,
    max_size=6,
)


@given(nonzero_terms, nonzero_terms, st.sampled_from([(1, 2), (2, 1)]))
@settings(max_examples=60, deadline=None, derandomize=True)
def test_leading_term_is_multiplicative(a, b, sigma):
    f, g = poly_of(a), poly_of(b)
    lf, lg = leading_term(f, sigma), leading_term(g, sigma)
    lfg = leading_term(f * g, sigma)
    assert lfg.exponents == tuple(x + y for x, y in zip(lf.exponents, lg.exponents))
    assert lfg.coeff == lf.coeff * lg.coeff % P


@given(terms, st.integers(0, 1), st.integers(1, 3))
def test_derivative_lowers_degree(a, index, order):
    f = poly_of(a)
    d = partial_derivative(f, index, order)
    assert d.is_zero() or d.total_degree() <= f.total_degree() - order
    assert d.is_zero() or d.degree_in(index) <= f.degree_in(index) - order


def test_constant_hash_agrees_with_int_equality():
    three = Poly.constant(3, P, 2)
    assert three == 3 and three != 10
    assert hash(three) == hash(3)
    assert 3 in {three}
    assert Poly.zero(P, 2) == 0 and hash(Poly.zero(P, 2)) == hash(0)
    assert three != z(0, 2)
