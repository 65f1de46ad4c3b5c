"""
F_p 演算のテスト
"""

import math

import pytest
from hypothesis import given, strategies as st

from fpkz.errors import DomainError, ModulusMismatch, ZeroInverse
from fpkz.fp_arith import (
    FpScalar,
    beta_fp,
    binom_mod_p,
    factorial_mod_p,
    fp,
    gamma_fp,
    gamma_sign_audit,
    inv,
    inv_mod,
    is_prime,
    lemma_binomial_form,
    lemma_domain,
    lemma_factorial_form,
    lemma_gamma_form,
    reflection_holds,
    sign_offset,
)

SMALL_PRIMES = [3, 5, 7, 11, 13]
primes = st.sampled_from(SMALL_PRIMES + [17, 19, 23, 29, 31])


def test_scalar_is_canonical():
    assert fp(-1, 7).value == 6
    assert fp(15, 7) == 1
    assert fp(3, 7) + 5 == 1
    assert 2 - fp(3, 7) == 6


def test_scalar_hash_agrees_with_int_equality():
    assert fp(10, 7) == 3
    assert fp(10, 7) != 10
    assert hash(fp(10, 7)) == hash(3)
    assert 3 in {fp(3, 7)}
    assert fp(3, 7) in {3}


def test_mixed_moduli_raise():
    with pytest.raises(ModulusMismatch):
        fp(1, 5) + fp(1, 7)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroInverse):
        inv(fp(0, 5))
    with pytest.raises(ZeroInverse):
        fp(1, 5) / 0


@given(p=primes, a=st.integers(min_value=1, max_value=10**6))
def test_inverse_property(p, a):
    if a % p == 0:
        return
    assert (inv_mod(a, p) * a) % p == 1


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_factorial():
    assert factorial_mod_p(0, 7) == 1
    assert factorial_mod_p(6, 7) == 6  # Wilson
    assert factorial_mod_p(7, 7) == 0
    with pytest.raises(DomainError):
        factorial_mod_p(-1, 7)


@given(p=st.sampled_from(SMALL_PRIMES), a=st.integers(0, 200), b=st.integers(-3, 200))
def test_lucas_matches_exact_binomial(p, a, b):
    expected = math.comb(a, b) % p if 0 <= b <= a else 0
    assert binom_mod_p(a, b, p).value == expected


def test_gamma_values():
    # Γ(1) = -1, Γ(2) = 1, Γ(3) = -2, Γ(0) = Γ(p) = 1
    assert gamma_fp(1, 7) == 6
    assert gamma_fp(2, 7) == 1
    assert gamma_fp(3, 7) == 5
    assert gamma_fp(0, 7) == 1
    assert gamma_fp(7, 7) == 1


@given(p=primes, x=st.integers(-500, 500))
def test_gamma_is_periodic(p, x):
    assert gamma_fp(x + p, p) == gamma_fp(x, p)


@given(p=primes, x=st.integers(-100, 100))
def test_reflection_with_exponent_p_at_zero(p, x):
    assert reflection_holds(x, p)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_beta_matches_coefficient_extraction(p):
    for a in range(1, p):
        for b in range(p - 1 - a, p):
            if b <= 0:
                continue
            # x^a (1-x)^b の x^{p-1} の係数
            k = p - 1 - a
            coeff = (-1) ** k * math.comb(b, k) if 0 <= k <= b else 0
            assert beta_fp(a, b, p) == coeff % p


def test_beta_domain():
    with pytest.raises(DomainError):
        beta_fp(1, 1, 7)
    with pytest.raises(DomainError):
        beta_fp(0, 6, 7)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_lemma_forms(p):
    for A, B in lemma_domain(p):
        assert lemma_binomial_form(A, B, p) == lemma_factorial_form(A, B, p)
        assert lemma_gamma_form(A, B, p) == -lemma_factorial_form(A, B, p)


def test_lemma_domain_rejected():
    with pytest.raises(DomainError):
        lemma_binomial_form(1, 1, 7)


def test_sign_offset():
    assert sign_offset(fp(3, 7), fp(3, 7)) == 0
    assert sign_offset(fp(3, 7), fp(4, 7)) == 1
    assert sign_offset(fp(3, 7), fp(5, 7)) is None
    assert sign_offset((1, 2), (6, 5), p=7) == 1
    assert sign_offset((1, 2), (1, 5), p=7) is None


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_sign_audit(p):
    audit = gamma_sign_audit(p)
    assert audit.wilson and audit.reflection and audit.periodicity
    assert not audit.reflection_literal_at_zero
    assert audit.lemma_offsets == {1}
    assert audit.lemma_points == p * (p - 1) // 2
    assert audit.passed


def test_sign_audit_rejects_non_odd_prime():
    with pytest.raises(DomainError):
        gamma_sign_audit(2)
    with pytest.raises(DomainError):
        gamma_sign_audit(9)


@pytest.mark.parametrize("p", [-7, 0, 1, 2, 4, 9, 15])
def test_gamma_rejects_non_odd_prime(p):
    with pytest.raises(DomainError):
        gamma_fp(3, p)


def test_scalar_power():
    assert fp(3, 7) ** -1 == inv(fp(3, 7))
    assert FpScalar(2, 5) ** 4 == 1
