"""
KZ 系の中核モジュール
インスタンスの算術データ (M_i, r, ample)、Ω 行列、分母を払った検証器
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ArityMismatch, InvalidInstance, ModulusMismatch, PreconditionError
from .fp_arith import inv_mod, is_prime
from .mpoly import Poly, VecPoly, difference, partial_derivative
from .schemas import InstanceModel

logger = logging.getLogger(__name__)

STANDARD = "standard"
M_WEIGHTED = "m_weighted"


@dataclass(frozen=True)
class KzInstance:
    """
    KZ 系の算術データ

    M_i は q M_i ≡ -m_i (mod p) を満たす最小の正整数、r = floor(ΣM / p)。
    """
    p: int
    q: int
    m: Tuple[int, ...]
    M: Tuple[int, ...] = field(init=False)
    r: int = field(init=False)
    ample: bool = field(init=False)

    def __post_init__(self):
        m = tuple(int(v) for v in self.m)
        object.__setattr__(self, "m", m)
        n = len(m)
        if not is_prime(self.p):
            raise InvalidInstance(f"p={self.p} は素数ではありません")
        if not is_prime(self.q):
            raise InvalidInstance(f"q={self.q} は素数ではありません")
        if n < 2:
            raise InvalidInstance(f"n={n} は 2 以上である必要があります")
        if self.p <= n:
            raise InvalidInstance(f"p > n が必要です (p={self.p}, n={n})")
        if self.p <= self.q:
            raise InvalidInstance(f"p > q が必要です (p={self.p}, q={self.q})")
        bad = [v for v in m if not 0 < v < self.q]
        if bad:
            raise InvalidInstance(f"0 < m_i < q が必要です (m={m}, q={self.q})")

        q_inv = inv_mod(self.q, self.p)
        M = tuple((-v * q_inv) % self.p for v in m)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "r", sum(M) // self.p)
        object.__setattr__(self, "ample", self.r == n - 1)

    @property
    def n(self) -> int:
        return len(self.m)

    @property
    def M_total(self) -> int:
        return sum(self.M)

    @property
    def triple(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (self.p, self.q, self.m)

    def delta(self, l: int) -> int:
        """I^[l] の斉次次数 ΣM - l p"""
        return self.M_total - l * self.p

    def label(self) -> str:
        return f"(p={self.p}, q={self.q}, m={','.join(map(str, self.m))})"

    def to_model(self) -> InstanceModel:
        return InstanceModel(p=self.p, q=self.q, m=list(self.m))

    @classmethod
    def from_model(cls, model: InstanceModel) -> "KzInstance":
        return new_instance(model.p, model.q, model.m)


def new_instance(p: int, q: int, m: Sequence[int]) -> KzInstance:
    """
    インスタンスを生成

    Args:
        p: 素数
        q: 素数（q < p）
        m: 0 < m_i < q の正整数列

    Returns:
        KzInstance: M, r, ample を計算済みのインスタンス

    Raises:
        InvalidInstance: 条件を満たさない場合
    """
    return KzInstance(int(p), int(q), tuple(m))


def _check_pair(inst: KzInstance, i: int, j: int):
    n = inst.n
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"添字 (i, j) = ({i}, {j}) は不正です (n={n})")


def omega(inst: KzInstance, i: int, j: int, kind: str = STANDARD) -> np.ndarray:
    """
    Ω_ij（standard）または Ω^M_ij（m_weighted）を n×n 行列で返す

    添字は 1 始まり。成分は 0..p-1 に正規化する。
    """
    _check_pair(inst, i, j)
    a, b = i - 1, j - 1
    mat = np.zeros((inst.n, inst.n), dtype=np.int64)
    if kind == STANDARD:
        m = inst.m
        mat[a, a] = -m[b]
        mat[a, b] = m[b]
        mat[b, a] = m[a]
        mat[b, b] = -m[a]
    elif kind == M_WEIGHTED:
        M = inst.M
        mat[a, a] = M[b]
        mat[a, b] = -M[b]
        mat[b, a] = -M[a]
        mat[b, b] = M[a]
    else:
        raise ValueError(f"不明な Ω の種類です: {kind}")
    return mat % inst.p


def omega_row_sum(inst: KzInstance, j: int) -> np.ndarray:
    """Ω^M_j = Σ_{l>j} Ω^M_jl"""
    if not 1 <= j < inst.n:
        raise IndexError(f"j={j} は 1..n-1 の範囲外です")
    total = np.zeros((inst.n, inst.n), dtype=np.int64)
    for l in range(j + 1, inst.n + 1):
        total = total + omega(inst, j, l, M_WEIGHTED)
    return total % inst.p


def apply_matrix(matrix: np.ndarray, vec: VecPoly) -> VecPoly:
    """定数行列を多項式ベクトルに作用させる"""
    p = vec.p
    coords = []
    for row in matrix:
        acc = Poly.zero(p, vec.arity)
        for coeff, poly in zip(row, vec.coords):
            c = int(coeff) % p
            if c:
                acc = acc + poly.scale(c)
        coords.append(acc)
    return VecPoly(coords)


def clearing_factor(inst: KzInstance, j: int, exclude: Sequence[int] = ()) -> Poly:
    """∏_{k ∉ {j} ∪ exclude} (z_j - z_k)（添字は 1 始まり）"""
    result = Poly.constant(1, inst.p, inst.n)
    for k in range(1, inst.n + 1):
        if k == j or k in exclude:
            continue
        result = result * difference(j - 1, k - 1, inst.p, inst.n)
    return result


def algebraic_residual(inst: KzInstance, I: VecPoly, weights: Optional[Sequence[int]] = None) -> Poly:
    """Σ m_i I_i"""
    weights = inst.m if weights is None else weights
    acc = Poly.zero(inst.p, I.arity)
    for w, poly in zip(weights, I.coords):
        acc = acc + poly.scale(w)
    return acc


def kz_residuals(inst: KzInstance, I: VecPoly, form: str = STANDARD) -> Dict[int, VecPoly]:
    """
    各 j について分母を払った KZ 方程式の残差

    standard:   q ∏(z_j - z_k) ∂I/∂z_j - Σ_l ∏_{k≠j,l}(z_j - z_k) Ω_jl I
    m_weighted: ∏(z_j - z_k) ∂I/∂z_j - Σ_l ∏_{k≠j,l}(z_j - z_k) Ω^M_jl I

    Returns:
        Dict[int, VecPoly]: j（1 始まり）-> 残差
    """
    _check_shape(inst, I)
    lead = inst.q if form == STANDARD else 1
    residuals: Dict[int, VecPoly] = {}
    for j in range(1, inst.n + 1):
        derivative = partial_derivative(I, j - 1, 1)
        lhs = derivative.scale(clearing_factor(inst, j)).scale(lead)
        for l in range(1, inst.n + 1):
            if l == j:
                continue
            term = apply_matrix(omega(inst, j, l, form), I)
            lhs = lhs - term.scale(clearing_factor(inst, j, exclude=(l,)))
        residuals[j] = lhs
    return residuals


def _check_shape(inst: KzInstance, I: VecPoly):
    if I.p != inst.p:
        raise ModulusMismatch(f"解の法 {I.p} がインスタンスの p={inst.p} と一致しません")
    if I.n != inst.n or I.arity != inst.n:
        raise ArityMismatch(f"解の形 (座標 {I.n}, 変数 {I.arity}) が n={inst.n} と一致しません")


@dataclass
class VerificationReport:
    """KZ 系の検証結果（失敗は例外ではなく結果として返す）"""
    instance: KzInstance
    algebraic_ok: bool
    standard_pass: bool
    m_weighted_pass: Optional[bool] = None
    first_failure: Optional[str] = None
    residuals: Dict[str, VecPoly] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.algebraic_ok and self.standard_pass


def verify_kz_solution(inst: KzInstance, I: VecPoly,
                       forms: Sequence[str] = (STANDARD, M_WEIGHTED)) -> VerificationReport:
    """
    I が KZ 系（代数的制約と分母を払った微分方程式）を満たすか検証

    Args:
        inst: インスタンス
        I: n 変数 n 座標の多項式ベクトル
        forms: 検証する形（standard は必須）

    Returns:
        VerificationReport: 最初に破れた恒等式と残差を含む
    """
    _check_shape(inst, I)
    failures: List[str] = []
    residuals: Dict[str, VecPoly] = {}

    constraint = algebraic_residual(inst, I)
    algebraic_ok = constraint.is_zero()
    if not algebraic_ok:
        failures.append("algebraic")
        residuals["algebraic"] = VecPoly([constraint])

    outcome: Dict[str, bool] = {}
    for form in dict.fromkeys((STANDARD,) + tuple(forms)):
        ok = True
        for j, residual in kz_residuals(inst, I, form).items():
            if not residual.is_zero():
                ok = False
                key = f"{form}:{j}"
                failures.append(key)
                residuals[key] = residual
        outcome[form] = ok

    report = VerificationReport(
        instance=inst,
        algebraic_ok=algebraic_ok,
        standard_pass=outcome[STANDARD],
        m_weighted_pass=outcome.get(M_WEIGHTED),
        first_failure=failures[0] if failures else None,
        residuals=residuals,
    )
    logger.debug("KZ 検証 %s: passed=%s", inst.label(), report.passed)
    return report


def frobenius_twist(I: VecPoly, a: Sequence[int]) -> VecPoly:
    """z^{p a} I"""
    return I.shift([I.p * x for x in a])


def is_L_admissible(inst: KzInstance, I: VecPoly, L: Sequence[int]) -> bool:
    """
    各 j について z_j に関する L_j 階導関数が恒等的に 0 か

    L = (M_1+1, ..., M_n+1) で超幾何解の加群が切り出される。
    """
    if len(L) != inst.n or any(x < 0 for x in L):
        raise ValueError(f"L は長さ n の非負整数列である必要があります: {L}")
    _check_shape(inst, I)
    return all(partial_derivative(I, j, L[j]).is_zero() for j in range(inst.n))


def hypergeometric_L(inst: KzInstance) -> Tuple[int, ...]:
    """L = (M_1+1, ..., M_n+1)"""
    return tuple(x + 1 for x in inst.M)


def ample_inequalities_check(inst: KzInstance) -> bool:
    """
    ample なインスタンスで、全ての l と大きさ l の部分集合 I について
    (l-1) p < Σ_{i∈I} M_i < l p が成り立つか

    Raises:
        PreconditionError: ample でない場合
    """
    if not inst.ample:
        raise PreconditionError(f"{inst.label()} は ample ではありません")
    p = inst.p
    for l in range(1, inst.n):
        for subset in combinations(inst.M, l):
            total = sum(subset)
            if not (l - 1) * p < total < l * p:
                logger.error("ample 不等式が破れています %s: 部分和 %d (l=%d)", inst.label(), total, l)
                return False
    return True
