"""
KZ 系の中核（インスタンス・Ω・検証器）のテスト
"""

import numpy as np
import pytest

from fpkz.errors import ArityMismatch, InvalidInstance, ModulusMismatch, PreconditionError
from fpkz.kz_core import (
    M_WEIGHTED,
    STANDARD,
    ample_inequalities_check,
    frobenius_twist,
    hypergeometric_L,
    is_L_admissible,
    new_instance,
    omega,
    omega_row_sum,
    verify_kz_solution,
)
from fpkz.mpoly import Poly, VecPoly, difference


def linear_solution():
    """(p, q, m) = (5, 3, (1, 1)) の I^[1] = (3 z1 + 2 z2, 2 z1 + 3 z2)"""
    inst = new_instance(5, 3, (1, 1))
    I = VecPoly([
        Poly.from_terms(5, 2, [((1, 0), 3), ((0, 1), 2)]),
        Poly.from_terms(5, 2, [((1, 0), 2), ((0, 1), 3)]),
    ])
    return inst, I


@pytest.mark.parametrize("triple, M, r, ample", [
    ((13, 3, (2, 2, 2, 1, 1, 1)), (8, 8, 8, 4, 4, 4), 2, False),
    ((5, 3, (1, 1)), (3, 3), 1, True),
    ((19, 5, (1, 1, 1)), (15, 15, 15), 2, True),
    ((3, 2, (1, 1)), (1, 1), 0, False),
])
def test_instance_arithmetic(triple, M, r, ample):
    inst = new_instance(*triple)
    assert inst.M == M
    assert inst.r == r
    assert inst.ample is ample
    for Mi, mi in zip(inst.M, inst.m):
        assert 0 < Mi < inst.p
        assert (inst.q * Mi + mi) % inst.p == 0


def test_worked_example_degrees():
    inst = new_instance(13, 3, (2, 2, 2, 1, 1, 1))
    assert [inst.delta(l) for l in (1, 2)] == [23, 10]


@pytest.mark.parametrize("triple", [
    (4, 3, (1, 1)),     # p は素数でない
    (7, 4, (1, 1)),     # q は素数でない
    (5, 7, (1, 1)),     # q >= p
    (5, 3, (1,)),       # n < 2
    (3, 2, (1, 1, 1)),  # p <= n
    (7, 3, (0, 1)),     # m_i = 0
    (7, 3, (1, 3)),     # m_i >= q
])
def test_invalid_instances(triple):
    with pytest.raises(InvalidInstance):
        new_instance(*triple)


def test_omega_matrices():
    inst = new_instance(7, 3, (1, 2, 1))
    std = omega(inst, 1, 2, STANDARD)
    assert std.tolist() == [[5, 2, 0], [1, 6, 0], [0, 0, 0]]
    assert np.array_equal(omega(inst, 1, 2), omega(inst, 2, 1))
    weighted = omega(inst, 1, 2, M_WEIGHTED)
    M = inst.M
    assert weighted[0, 0] == M[1] and weighted[1, 1] == M[0]
    with pytest.raises(IndexError):
        omega(inst, 1, 1)
    with pytest.raises(ValueError):
        omega(inst, 1, 2, "other")


def test_omega_row_sum():
    inst = new_instance(7, 3, (1, 2, 1))
    total = (omega(inst, 1, 2, M_WEIGHTED) + omega(inst, 1, 3, M_WEIGHTED)) % 7
    assert np.array_equal(omega_row_sum(inst, 1), total)
    with pytest.raises(IndexError):
        omega_row_sum(inst, 3)


def test_verifier_accepts_linear_solution():
    inst, I = linear_solution()
    report = verify_kz_solution(inst, I)
    assert report.passed
    assert report.m_weighted_pass
    assert report.first_failure is None


def test_verifier_rejects_constant():
    inst, _ = linear_solution()
    constant = VecPoly([Poly.constant(1, 5, 2), Poly.constant(-1, 5, 2)])
    report = verify_kz_solution(inst, constant)
    assert report.algebraic_ok
    assert not report.passed
    assert report.first_failure.startswith(STANDARD)
    assert report.residuals


def test_verifier_reports_algebraic_failure():
    inst, I = linear_solution()
    broken = VecPoly([I[0], I[0]])
    report = verify_kz_solution(inst, broken)
    assert not report.algebraic_ok
    assert report.first_failure == "algebraic"


def test_verifier_shape_errors():
    inst, I = linear_solution()
    with pytest.raises(ModulusMismatch):
        verify_kz_solution(inst, VecPoly([Poly.zero(7, 2), Poly.zero(7, 2)]))
    with pytest.raises(ArityMismatch):
        verify_kz_solution(inst, VecPoly([Poly.zero(5, 3), Poly.zero(5, 3)]))


def test_frobenius_twist_preserves_solutions():
    inst, I = linear_solution()
    twisted = frobenius_twist(I, (1, 2))
    assert twisted == I.shift((5, 10))
    assert verify_kz_solution(inst, twisted).passed


def test_two_point_solution_for_small_instance():
    inst = new_instance(3, 2, (1, 1))
    base = difference(0, 1, 3, 2) ** 2
    I = VecPoly([base, -base])
    assert verify_kz_solution(inst, I).passed


def test_L_admissibility():
    inst, I = linear_solution()
    assert hypergeometric_L(inst) == (4, 4)
    assert is_L_admissible(inst, I, hypergeometric_L(inst))
    assert not is_L_admissible(inst, I, (1, 1))
    with pytest.raises(ValueError):
        is_L_admissible(inst, I, (1,))


def test_L_admissibility_of_two_point_solution():
    inst = new_instance(3, 2, (1, 1))
    base = difference(0, 1, 3, 2) ** 2
    I = VecPoly([base, -base])
    assert not is_L_admissible(inst, I, (2, 2))
    assert is_L_admissible(inst, I, (3, 3))


@pytest.mark.parametrize("triple", [(7, 5, (1, 3)), (7, 5, (3, 4)), (7, 3, (2, 2)), (5, 3, (1, 1))])
def test_ample_inequalities(triple):
    assert ample_inequalities_check(new_instance(*triple))


def test_ample_inequalities_require_ample():
    with pytest.raises(PreconditionError):
        ample_inequalities_check(new_instance(3, 2, (1, 1)))
