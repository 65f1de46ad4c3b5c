"""
先頭項・座標行列・行列式の解析のテスト
"""

import pytest

from fpkz.analysis import (
    coordinate_matrix,
    degree_congruence_check,
    det_closed_form,
    det_constant,
    det_leading_prediction,
    i_of_l,
    i_sequence,
    i_sequence_check,
    initial_value_sweep,
    leading_eigen_check,
    leading_prediction,
    leading_system_check,
    prediction_matches,
    prediction_sign_offset,
    verify_determinant,
)
from fpkz.construct import hypergeometric_solution
from fpkz.errors import CycleOutOfRange, PreconditionError
from fpkz.kz_core import new_instance
from fpkz.mpoly import Poly, VecPoly, leading_term

WORKED = (13, 3, (2, 2, 2, 1, 1, 1))
IDENTITY = (1, 2, 3, 4, 5, 6)
SWAP_34 = (1, 2, 4, 3, 5, 6)
REVERSE = (6, 5, 4, 3, 2, 1)

# (l, σ) -> (係数ベクトル, 単項式)
WORKED_LEADING = [
    (1, IDENTITY, (0, 0, 12, 5, 5, 5), (8, 8, 7, 0, 0, 0)),
    (1, SWAP_34, (0, 0, 4, 0, 9, 9), (8, 8, 3, 4, 0, 0)),
    (1, REVERSE, (9, 4, 0, 0, 0, 0), (0, 3, 8, 4, 4, 4)),
    (2, IDENTITY, (0, 8, 2, 2, 2, 2), (8, 2, 0, 0, 0, 0)),
    (2, SWAP_34, (0, 8, 2, 2, 2, 2), (8, 2, 0, 0, 0, 0)),
    (2, REVERSE, (6, 6, 6, 3, 0, 0), (0, 0, 0, 2, 4, 4)),
]

AMPLE = [(5, 3, (1, 1)), (7, 5, (1, 3)), (7, 3, (2, 2)), (7, 5, (3, 3, 3))]


@pytest.fixture(scope="module")
def worked():
    inst = new_instance(*WORKED)
    return inst, {l: hypergeometric_solution(inst, l).poly for l in (1, 2)}


def test_i_of_l_for_worked_example():
    inst = new_instance(*WORKED)
    assert i_of_l(inst.M, 1, inst.p) == 3
    assert i_of_l(inst.M, 2, inst.p) == 2
    assert i_sequence(inst) == (3, 2)
    assert i_sequence_check(inst)
    with pytest.raises(CycleOutOfRange):
        i_of_l(inst.M, 3, inst.p)


@pytest.mark.parametrize("triple", AMPLE + [(19, 5, (1, 1, 1))])
def test_i_of_l_in_ample_case(triple):
    inst = new_instance(*triple)
    assert i_sequence(inst) == tuple(inst.n - l for l in range(1, inst.r + 1))


@pytest.mark.parametrize("l, sigma, vector, exponents", WORKED_LEADING)
def test_worked_example_leading_terms(worked, l, sigma, vector, exponents):
    inst, solutions = worked
    actual = leading_term(solutions[l], sigma)
    assert actual.coeff_vector() == vector
    assert actual.exponents == exponents

    prediction = leading_prediction(inst, l, sigma)
    assert prediction.coeff_vector.a_coords == vector
    assert prediction.exponents == exponents
    assert prediction_matches(inst, l, sigma, solutions[l])
    assert prediction_sign_offset(inst, l, sigma) == 1


def test_prediction_for_small_instance():
    inst = new_instance(5, 3, (1, 1))
    prediction = leading_prediction(inst, 1)
    assert prediction.i_of_l == 1
    assert prediction.scalar == 1
    assert prediction.coeff_vector.a_coords == (3, 2)
    assert prediction.coeff_vector.w_coords == (4,)
    assert prediction.exponents == (1, 0)


def test_prediction_rejects_bad_input():
    inst = new_instance(5, 3, (1, 1))
    with pytest.raises(CycleOutOfRange):
        leading_prediction(inst, 2)
    with pytest.raises(ValueError):
        leading_prediction(inst, 1, (1,))


def test_leading_system():
    inst = new_instance(3, 2, (1, 1))
    assert leading_system_check(inst, (1, -1), (2, 0))
    assert leading_eigen_check(inst, (1, -1), (2, 0))
    assert not leading_system_check(inst, (1, 0), (2, 0))
    assert not leading_system_check(inst, (0, 0), (2, 0))
    assert not leading_system_check(inst, (1, -1), (1, 1))
    assert not leading_eigen_check(inst, (1, -1), (2, 1))


def test_leading_system_accepts_hypergeometric_leading_terms(worked):
    inst, solutions = worked
    for poly in solutions.values():
        lt = leading_term(poly)
        assert leading_system_check(inst, lt.coeff_vector(), lt.exponents)
        assert leading_eigen_check(inst, lt.coeff_vector(), lt.exponents)


def test_coordinate_matrix_small():
    inst = new_instance(5, 3, (1, 1))
    matrix = coordinate_matrix(inst)
    expected = Poly.from_terms(5, 2, [((1, 0), 4), ((0, 1), 1)])  # 4 (z1 - z2)
    assert matrix.entries == [[expected]]
    assert matrix.reconstruct(1) == hypergeometric_solution(inst, 1).poly
    assert matrix.evaluate((0, 1)).tolist() == [[1]]
    with pytest.raises(CycleOutOfRange):
        coordinate_matrix(new_instance(3, 2, (1, 1)))


def test_determinant_small():
    inst = new_instance(5, 3, (1, 1))
    assert det_constant(inst) == 4
    assert det_closed_form(inst) == Poly.from_terms(5, 2, [((1, 0), 4), ((0, 1), 1)])
    assert det_leading_prediction(inst) == (1, (1, 0))
    report = verify_determinant(inst)
    assert report.passed
    assert report.gamma_form_sign_offset == 1


@pytest.mark.parametrize("triple", AMPLE)
def test_determinant_theorem(triple):
    inst = new_instance(*triple)
    report = verify_determinant(inst)
    assert report.equal
    assert report.ode_ok and report.degree_ok and report.leading_monomial_ok and report.divisible
    assert report.gamma_form_sign_offset == (inst.n - 1) % 2


def test_determinant_requires_ample():
    with pytest.raises(PreconditionError):
        verify_determinant(new_instance(13, 3, (2, 2, 2, 1, 1, 1)))


def test_degree_congruence():
    inst = new_instance(5, 3, (1, 1))
    assert degree_congruence_check(inst, hypergeometric_solution(inst, 1).poly)
    with pytest.raises(PreconditionError):
        degree_congruence_check(inst, VecPoly.zero(5, 2, 2))
    with pytest.raises(PreconditionError):
        degree_congruence_check(inst, VecPoly([Poly.constant(1, 5, 2), Poly.constant(-1, 5, 2)]))


@pytest.mark.parametrize("triple", [(5, 3, (1, 1)), (7, 5, (1, 3)), (7, 5, (3, 3, 3))])
def test_initial_value_sweep(triple):
    inst = new_instance(*triple)
    sweep = initial_value_sweep(inst)
    assert sweep.passed
    assert sweep.points > 0
