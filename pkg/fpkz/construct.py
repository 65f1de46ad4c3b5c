"""
F_p 超幾何解の構成モジュール
被積分ベクトル P(x, z)、F_p 積分、解 I^[l]、係数の閉公式、n = 2 の閉じた形
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CycleOutOfRange, PreconditionError
from .fp_arith import FpScalar, binom_mod_p, gamma_ratio, inv_mod
from .kz_core import KzInstance
from .linalg import rank_mod_p
from .mpoly import (
    Exponents,
    Poly,
    VecPoly,
    difference,
    extract_x_coeff,
    leading_term,
    partial_derivative,
    pow_binomial,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HypergeomSolution:
    """F_p 超幾何解 I^[l]（斉次次数 δ_l）"""
    l: int
    poly: VecPoly
    degree: int
    instance: KzInstance


def _check_cycle(inst: KzInstance, l: int):
    if not 1 <= l <= inst.r:
        raise CycleOutOfRange(
            f"l={l} は 1..r の範囲外です (r={inst.r}, {inst.label()})"
        )


def integrand_exponents(inst: KzInstance, j: int) -> Tuple[int, ...]:
    """座標 j（0 始まり）の因子 (x - z_i) の冪指数"""
    return tuple(M - 1 if i == j else M for i, M in enumerate(inst.M))


def integrand_vector(inst: KzInstance) -> VecPoly:
    """
    P(x, z) の座標 j = ∏_{i≠j} (x - z_i)^{M_i} (x - z_j)^{M_j - 1}

    変数スロットは z_1..z_n の後に x（arity n+1）。
    """
    n, p = inst.n, inst.p
    arity = n + 1
    coords = []
    for j in range(n):
        poly = Poly.constant(1, p, arity)
        for i, e in enumerate(integrand_exponents(inst, j)):
            poly = poly * pow_binomial(n, i, e, p, arity)
        coords.append(poly)
    return VecPoly(coords)


def fp_integral(f, l: int, p: int):
    """サイクル [l]_p 上の F_p 積分（x^{lp-1} の係数）"""
    return extract_x_coeff(f, l * p - 1)


def _pruned_coordinate(inst: KzInstance, j: int, target: int) -> Poly:
    """
    二項展開を順に畳み込み、x の次数が target に届き得ない項を捨てながら
    x^target の係数だけを求める
    """
    n, p = inst.n, inst.p
    exponents = integrand_exponents(inst, j)
    # partial: (z の指数, x の次数) -> 係数
    partial: Dict[Tuple[Exponents, int], int] = {((0,) * n, 0): 1}
    remaining = sum(exponents)
    for i, e in enumerate(exponents):
        remaining -= e
        expansion = []
        for k in range(e + 1):
            c = binom_mod_p(e, k, p).value
            if c:
                expansion.append((k, c if k % 2 == 0 else p - c))
        step: Dict[Tuple[Exponents, int], int] = {}
        for (z_exp, x_deg), coeff in partial.items():
            for k, c in expansion:
                new_x = x_deg + e - k
                if new_x > target or new_x + remaining < target:
                    continue
                key = (z_exp[:i] + (k,) + z_exp[i + 1:], new_x)
                step[key] = (step.get(key, 0) + coeff * c) % p
        partial = {key: c for key, c in step.items() if c}
    terms = {z_exp: c for (z_exp, x_deg), c in partial.items() if x_deg == target}
    return Poly(p, n, terms)


def hypergeometric_solution(inst: KzInstance, l: int) -> HypergeomSolution:
    """
    I^[l](z) = P(x, z) の x^{lp-1} の係数

    Raises:
        CycleOutOfRange: l < 1 または l > r の場合
    """
    _check_cycle(inst, l)
    target = l * inst.p - 1
    coords = [_pruned_coordinate(inst, j, target) for j in range(inst.n)]
    solution = HypergeomSolution(l=l, poly=VecPoly(coords), degree=inst.delta(l), instance=inst)
    logger.debug("I^[%d] を構成 %s: %d 項", l, inst.label(), len(solution.poly.support()))
    return solution


def integrand_coefficient_direct(inst: KzInstance, l: int) -> VecPoly:
    """P(x, z) を完全に展開してから x^{lp-1} の係数を取り出す"""
    _check_cycle(inst, l)
    return fp_integral(integrand_vector(inst), l, inst.p)


def all_hypergeometric_solutions(inst: KzInstance) -> List[HypergeomSolution]:
    return [hypergeometric_solution(inst, l) for l in range(1, inst.r + 1)]


def coefficient_closed_form(inst: KzInstance, l: int, d: Sequence[int]) -> Tuple[int, ...]:
    """
    I^[l] の z^d の係数の閉公式

    Σd = δ_l かつ d_i <= M_i のとき
    (-1)^{δ_l} ∏ C(M_j, d_j) (1 - d_1/M_1, ..., 1 - d_n/M_n)、それ以外は 0。
    """
    _check_cycle(inst, l)
    p, M = inst.p, inst.M
    d = tuple(int(x) for x in d)
    if len(d) != inst.n or any(x < 0 for x in d):
        raise ValueError(f"指数ベクトルが不正です: {d}")
    delta = inst.delta(l)
    if sum(d) != delta or any(x > Mj for x, Mj in zip(d, M)):
        return (0,) * inst.n
    scalar = FpScalar(-1 if delta % 2 else 1, p)
    for x, Mj in zip(d, M):
        scalar = scalar * binom_mod_p(Mj, x, p)
    return tuple((scalar * (1 - x * inv_mod(Mj, p))).value for x, Mj in zip(d, M))


def support_monomials(inst: KzInstance, l: int) -> List[Exponents]:
    """Σd = δ_l かつ d_i <= M_i を満たす全ての指数"""
    delta = inst.delta(l)
    result: List[Exponents] = []

    def extend(prefix: Tuple[int, ...], left: int):
        index = len(prefix)
        if index == inst.n - 1:
            if left <= inst.M[index]:
                result.append(prefix + (left,))
            return
        rest = sum(inst.M[index + 1:])
        for x in range(max(0, left - rest), min(left, inst.M[index]) + 1):
            extend(prefix + (x,), left - x)

    if delta >= 0:
        extend((), delta)
    return result


def closed_form_solution(inst: KzInstance, l: int) -> VecPoly:
    """閉公式の係数から I^[l] を組み立てる"""
    mapping = {d: coefficient_closed_form(inst, l, d) for d in support_monomials(inst, l)}
    return VecPoly.from_monomial_map(inst.p, inst.n, inst.n, mapping)


def _check_beta(inst: KzInstance):
    if inst.n != 2 or not inst.ample:
        raise PreconditionError(f"n = 2 かつ ample である必要があります: {inst.label()}")


def beta_solution_n2(inst: KzInstance) -> HypergeomSolution:
    """
    n = 2 の閉じた形 (z_1 - z_2)^{M_1+M_2-p} (C(M_2, p-M_1), C(M_2-1, p-M_1-1))

    Raises:
        PreconditionError: n ≠ 2 または ample でない場合
    """
    _check_beta(inst)
    p = inst.p
    M1, M2 = inst.M
    base = difference(0, 1, p, 2) ** (M1 + M2 - p)
    vector = (binom_mod_p(M2, p - M1, p).value, binom_mod_p(M2 - 1, p - M1 - 1, p).value)
    return HypergeomSolution(l=1, poly=VecPoly.constant_vector(vector, base),
                             degree=inst.delta(1), instance=inst)


def beta_gamma_form(inst: KzInstance) -> VecPoly:
    """印刷されたガンマ表示 (-1)^{M_1} (z_1-z_2)^{e} G (f2/M2 - f1/M1)"""
    _check_beta(inst)
    p = inst.p
    M1, M2 = inst.M
    G = gamma_ratio(M1, M2, p)
    if M1 % 2:
        G = -G
    base = difference(0, 1, p, 2) ** (M1 + M2 - p)
    vector = ((G * -inv_mod(M1, p)).value, (G * inv_mod(M2, p)).value)
    return VecPoly.constant_vector(vector, base)


def beta_sign_offset(inst: KzInstance) -> Optional[int]:
    """ガンマ表示と二項表示を一致させる符号の指数"""
    binomial = beta_solution_n2(inst).poly
    gamma = beta_gamma_form(inst)
    if gamma == binomial:
        return 0
    if gamma == -binomial:
        return 1
    return None


def leading_coefficients_independent(inst: KzInstance, sigma: Optional[Sequence[int]] = None) -> bool:
    """I^[1..r] の σ-先頭係数が F_p 上一次独立か"""
    if inst.r == 0:
        return True
    rows = [leading_term(s.poly, sigma).coeff_vector() for s in all_hypergeometric_solutions(inst)]
    return rank_mod_p(rows, inst.p) == inst.r


def stokes_check(inst: KzInstance, Q: Poly, l: int) -> bool:
    """∂Q/∂x の F_p 積分が 0 になるか（x は末尾スロット）"""
    derivative = partial_derivative(Q, Q.arity - 1, 1)
    return fp_integral(derivative, l, inst.p).is_zero()

