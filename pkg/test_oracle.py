"""
総当たりオラクルのテスト
"""

import pytest
from hypothesis import given, settings, strategies as st

from fpkz.construct import hypergeometric_solution
from fpkz.errors import CycleOutOfRange, DomainError, NotASolution, PreconditionError, ResourceLimit
from fpkz.kz_core import frobenius_twist, new_instance, verify_kz_solution
from fpkz.mpoly import Poly, VecPoly, difference, leading_term
from fpkz.oracle import (
    Irreducible,
    ReductionCertificate,
    admissible_solutions,
    initial_value,
    leading_echelon,
    module_span,
    monomials_of_degree,
    reduce_to_hypergeometric,
    same_span,
    solve_homogeneous,
    uniqueness_check,
    unknown_count,
)
from fpkz.sl2_model import SingVector, from_w_coords, w_basis


def two_point():
    inst = new_instance(3, 2, (1, 1))
    base = difference(0, 1, 3, 2) ** 2
    return inst, VecPoly.constant_vector((1, -1), base)


def test_monomials():
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomials_of_degree(3, 4)) == 15
    assert monomials_of_degree(2, -1) == []
    assert unknown_count(3, 4) == 45


def test_two_point_example():
    inst, example = two_point()
    assert not solve_homogeneous(inst, 1)
    basis = solve_homogeneous(inst, 2)
    assert len(basis) == 1
    assert same_span(basis, [example])
    assert all(verify_kz_solution(inst, b).passed for b in basis)


def test_two_point_example_is_irreducible():
    inst, example = two_point()
    result = reduce_to_hypergeometric(inst, example)
    assert isinstance(result, Irreducible)
    assert not result.reducible
    assert result.leading_exponents == (2, 0)
    assert result.to_model().reducible is False


def test_solve_homogeneous_errors():
    inst = new_instance(5, 3, (1, 1))
    with pytest.raises(DomainError):
        solve_homogeneous(inst, -1)
    with pytest.raises(ResourceLimit):
        solve_homogeneous(inst, 50, max_unknowns=10)


def test_basis_is_deterministic():
    inst = new_instance(5, 3, (1, 1))
    first = solve_homogeneous(inst, 6)
    second = solve_homogeneous(inst, 6)
    assert first == second


@pytest.mark.parametrize("triple", [(5, 3, (1, 1)), (7, 5, (1, 3)), (7, 3, (2, 2))])
def test_solution_space_is_the_module(triple):
    inst = new_instance(*triple)
    for d in range(inst.M_total % inst.p, inst.M_total + 2 * inst.p + 1, inst.p):
        basis = solve_homogeneous(inst, d)
        module = module_span(inst, d)
        assert same_span(basis, module)
        assert same_span(admissible_solutions(inst, d, basis=basis), module)


AMPLE = [(5, 3, (1, 1)), (7, 5, (1, 3)), (7, 5, (3, 3, 3))]


@given(st.data())
@settings(max_examples=25, deadline=None, derandomize=True)
def test_non_congruent_degrees_have_no_solutions(data):
    inst = new_instance(*data.draw(st.sampled_from(AMPLE)))
    cap = inst.M_total + 2 * inst.p
    d = data.draw(st.integers(0, cap).filter(lambda k: (k - inst.M_total) % inst.p))
    assert solve_homogeneous(inst, d) == []


def test_reduction_certificate():
    inst = new_instance(5, 3, (1, 1))
    I = hypergeometric_solution(inst, 1).poly
    combined = frobenius_twist(I, (1, 0)).scale(2) + frobenius_twist(I, (0, 1)).scale(3)
    certificate = reduce_to_hypergeometric(inst, combined)
    assert isinstance(certificate, ReductionCertificate)
    assert certificate.reducible
    assert certificate.combine() == combined
    assert all(c.is_frobenius() for _, c in certificate.terms)
    (l, coeff), = certificate.terms
    assert l == 1
    assert coeff == Poly.from_terms(5, 2, [((5, 0), 2), ((0, 5), 3)])
    model = certificate.to_model()
    assert model.reducible and model.terms[0].l == 1


def test_reduce_rejects_non_solutions():
    inst = new_instance(5, 3, (1, 1))
    with pytest.raises(NotASolution):
        reduce_to_hypergeometric(inst, VecPoly([Poly.constant(1, 5, 2), Poly.constant(-1, 5, 2)]))


def test_leading_echelon_removes_dependence():
    inst = new_instance(5, 3, (1, 1))
    I = hypergeometric_solution(inst, 1).poly
    assert len(leading_echelon([I, I.scale(2), I.scale(3)])) == 1


@pytest.mark.parametrize("triple", [(5, 3, (1, 1)), (7, 5, (1, 3)), (7, 5, (3, 3, 3)), (11, 5, (4, 4, 4))])
def test_uniqueness(triple):
    inst = new_instance(*triple)
    for l in range(1, inst.r + 1):
        assert uniqueness_check(inst, l)
    with pytest.raises(CycleOutOfRange):
        uniqueness_check(inst, inst.r + 1)


def test_uniqueness_is_modulo_higher_cycles():
    inst = new_instance(7, 5, (3, 3, 3))
    d = inst.delta(1)
    basis = solve_homogeneous(inst, d)
    shifts = module_span(inst, d, above=1)
    assert len(basis) == 4
    assert len(shifts) == 3
    assert sorted(leading_term(v).exponents for v in shifts) == [(1, 0, 7), (1, 7, 0), (8, 0, 0)]
    assert same_span(basis, shifts + [hypergeometric_solution(inst, 1).poly])
    assert uniqueness_check(inst, 1, basis=basis)
    # I^[1] を含まない空間では成り立たない
    assert not uniqueness_check(inst, 1, basis=shifts)


def test_initial_value_small():
    inst = new_instance(5, 3, (1, 1))
    assert initial_value(inst, (0, 1), w_basis(inst)[0]) == (1,)


def test_initial_value_reconstructs_target():
    inst = new_instance(7, 5, (3, 3, 3))
    point = (0, 1, 3)
    w = from_w_coords(inst, (2, 5))
    c = initial_value(inst, point, w)
    values = [hypergeometric_solution(inst, l).poly.evaluate(point) for l in (1, 2)]
    combined = tuple(sum(int(ci) * int(v[k]) for ci, v in zip(c, values)) % 7 for k in range(3))
    assert combined == w.a_coords


def test_initial_value_preconditions():
    inst = new_instance(5, 3, (1, 1))
    w = w_basis(inst)[0]
    with pytest.raises(PreconditionError):
        initial_value(inst, (1, 1), w)
    with pytest.raises(PreconditionError):
        initial_value(inst, (0, 1), SingVector((1, 0)))
    with pytest.raises(PreconditionError):
        initial_value(new_instance(13, 3, (2, 2, 2, 1, 1, 1)), (0, 1, 2, 3, 4, 5), SingVector((0,) * 6))
