"""
先頭項と行列式の解析モジュール
i(l)、σ-先頭項の予測、先頭項の連立系、座標行列 c(z) とその行列式
"""

import logging
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .construct import all_hypergeometric_solutions, hypergeometric_solution
from .errors import CycleOutOfRange, PreconditionError
from .fp_arith import FpScalar, factorial_mod_p, gamma_fp, gamma_ratio, inv_mod, lemma_binomial_form, sign_offset
from .kz_core import KzInstance, clearing_factor, omega_row_sum, verify_kz_solution
from .linalg import det_poly, rank_mod_p
from .mpoly import Exponents, Poly, VecPoly, difference, divide_by_difference, leading_term, partial_derivative, validate_sigma
from .schemas import DetReportModel, PolyModel
from .sl2_model import SingVector, from_w_coords, to_w_coords

logger = logging.getLogger(__name__)


def i_of_l(M: Sequence[int], l: int, p: int) -> int:
    """
    0 <= Σ_{j>=i} M_j - l p < M_i を満たす唯一の i（1 始まり）

    Raises:
        CycleOutOfRange: そのような i が存在しない場合（l > r）
    """
    suffix = 0
    for i in range(len(M), 0, -1):
        suffix += M[i - 1]
        if 0 <= suffix - l * p < M[i - 1]:
            return i
    raise CycleOutOfRange(f"l={l} に対する i(l) が存在しません (M={tuple(M)}, p={p})")


def i_sequence(inst: KzInstance) -> Tuple[int, ...]:
    """(i(1), ..., i(r))"""
    return tuple(i_of_l(inst.M, l, inst.p) for l in range(1, inst.r + 1))


def i_sequence_check(inst: KzInstance) -> bool:
    """i(r) < ... < i(1) < n、ample なら i(l) = n - l"""
    seq = i_sequence(inst)
    decreasing = all(a > b for a, b in zip((inst.n,) + seq, seq))
    if inst.ample:
        return decreasing and seq == tuple(inst.n - l for l in range(1, inst.r + 1))
    return decreasing


@dataclass(frozen=True)
class LeadingPrediction:
    """I^[l] の σ-先頭項の予測値"""
    l: int
    sigma: Tuple[int, ...]
    i_of_l: int
    scalar: FpScalar
    coeff_vector: SingVector
    exponents: Exponents


def _relabel(inst: KzInstance, sigma: Optional[Sequence[int]]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    sigma = validate_sigma(sigma or range(1, inst.n + 1), inst.n)
    if len(sigma) != inst.n:
        raise ValueError(f"σ の長さ {len(sigma)} が n={inst.n} と一致しません")
    return sigma, tuple(inst.M[s - 1] for s in sigma)


def _check_cycle(inst: KzInstance, l: int):
    if not 1 <= l <= inst.r:
        raise CycleOutOfRange(f"l={l} は 1..r の範囲外です (r={inst.r}, {inst.label()})")


def leading_prediction(inst: KzInstance, l: int, sigma: Optional[Sequence[int]] = None) -> LeadingPrediction:
    """
    I^[l] の σ-先頭項を閉公式から予測

    σ で変数とパラメータを同時に並べ替え、並べ替え後の M で
    κ = (-1)^{Σ_{k<i} M_k} B C(B-1, p-A-1)（A = M_i, B = Σ_{j>i} M_j - (l-1)p）、
    ベクトル κ (Σ_{j>i} f^(j)v / Σ_{j>i} M_j - f^(i)v / M_i) を計算する。

    Args:
        inst: インスタンス
        l: サイクル番号（1..r）
        sigma: 変数の置換（1 始まり、既定は恒等置換）

    Returns:
        LeadingPrediction: 元の添字に戻した係数ベクトルと単項式

    Raises:
        CycleOutOfRange: l が 1..r の範囲外の場合
    """
    _check_cycle(inst, l)
    p, n = inst.p, inst.n
    sigma, M = _relabel(inst, sigma)
    i = i_of_l(M, l, p)
    A = M[i - 1]
    tail = sum(M[i:])
    B = tail - (l - 1) * p

    scalar = lemma_binomial_form(A, B, p)
    if sum(M[:i - 1]) % 2:
        scalar = -scalar

    relabeled = [0] * n
    relabeled[i - 1] = (scalar * -inv_mod(A, p)).value
    tail_inv = inv_mod(tail, p)
    for k in range(i, n):
        relabeled[k] = (scalar * tail_inv).value
    exps_relabeled = list(M[:i - 1]) + [sum(M[i - 1:]) - l * p] + [0] * (n - i)

    vector = [0] * n
    exponents = [0] * n
    for k, s in enumerate(sigma):
        vector[s - 1] = relabeled[k]
        exponents[s - 1] = exps_relabeled[k]
    sing = SingVector(tuple(vector))
    sing = SingVector(sing.a_coords, to_w_coords(inst, sing))
    return LeadingPrediction(l=l, sigma=sigma, i_of_l=i, scalar=scalar,
                             coeff_vector=sing, exponents=tuple(exponents))


def prediction_matches(inst: KzInstance, l: int, sigma: Optional[Sequence[int]] = None,
                       solution: Optional[VecPoly] = None) -> bool:
    """予測した σ-先頭項が構成した I^[l] の先頭項と完全に一致するか"""
    prediction = leading_prediction(inst, l, sigma)
    if solution is None:
        solution = hypergeometric_solution(inst, l).poly
    actual = leading_term(solution, prediction.sigma)
    ok = actual.exponents == prediction.exponents and actual.coeff_vector() == prediction.coeff_vector.a_coords
    if not ok:
        logger.info("先頭項の予測が不一致 %s l=%d σ=%s", inst.label(), l, prediction.sigma)
    return ok


def prediction_gamma_form(inst: KzInstance, l: int, sigma: Optional[Sequence[int]] = None) -> FpScalar:
    """印刷されたガンマ表示 (-1)^{Σ_{k<=i} M_k} Γ(A+1) Γ(B+1) / Γ(A+B-p+1)"""
    _check_cycle(inst, l)
    p = inst.p
    sigma, M = _relabel(inst, sigma)
    i = i_of_l(M, l, p)
    value = gamma_ratio(M[i - 1], sum(M[i:]) - (l - 1) * p, p)
    return -value if sum(M[:i]) % 2 else value


def prediction_sign_offset(inst: KzInstance, l: int, sigma: Optional[Sequence[int]] = None) -> Optional[int]:
    """ガンマ表示のスカラーと予測スカラー κ の符号ずれ"""
    return sign_offset(prediction_gamma_form(inst, l, sigma), leading_prediction(inst, l, sigma).scalar)


def leading_system_check(inst: KzInstance, C: Sequence[int], d: Sequence[int]) -> bool:
    """
    (C, d) が先頭項の連立系の特徴づけを満たすか

    C の最初の非零成分を i として、d = (M_1, ..., M_{i-1}, Σ_{j>=i} M_j, 0, ..., 0) mod p、
    Σ_{l>i} M_l ≢ 0、C_j = -M_i C_i / Σ_{l>i} M_l (j > i)、Σ M_j C_j = 0。
    """
    p, n, M = inst.p, inst.n, inst.M
    C = [int(c) % p for c in C]
    d = [int(x) % p for x in d]
    if len(C) != n or len(d) != n:
        raise ValueError(f"C と d の長さは n={n} である必要があります")
    nonzero = [k for k, c in enumerate(C) if c]
    if not nonzero:
        return False
    i = nonzero[0]
    if sum(Mj * c for Mj, c in zip(M, C)) % p:
        return False
    expected_d = [Mj % p for Mj in M[:i]] + [sum(M[i:]) % p] + [0] * (n - i - 1)
    if d != expected_d:
        return False
    tail = sum(M[i + 1:]) % p
    if not tail:
        return False
    value = (-M[i] * C[i] * inv_mod(tail, p)) % p
    return all(c == value for c in C[i + 1:])


def leading_eigen_check(inst: KzInstance, C: Sequence[int], d: Sequence[int]) -> bool:
    """Σ M_j C_j = 0、Ω^M_j C = d_j C (j < n)、d_n ≡ 0 の固有値系としての形"""
    p, n = inst.p, inst.n
    vec = np.array([int(c) % p for c in C], dtype=np.int64)
    d = [int(x) % p for x in d]
    if len(vec) != n or len(d) != n:
        raise ValueError(f"C と d の長さは n={n} である必要があります")
    if not vec.any() or d[-1] or int(np.dot(np.array(inst.M), vec)) % p:
        return False
    for j in range(1, n):
        image = (omega_row_sum(inst, j) @ vec) % p
        if not np.array_equal(image, (d[j - 1] * vec) % p):
            return False
    return True


@dataclass
class CoordinateMatrix:
    """c(z) = (c^l_j(z))：I^[l] = Σ_j c^l_j(z) w_j"""
    instance: KzInstance
    entries: List[List[Poly]]

    def row(self, l: int) -> List[Poly]:
        return self.entries[l - 1]

    def reconstruct(self, l: int) -> VecPoly:
        """Σ_j c^l_j(z) w_j を f^(i)v 基底のベクトルとして組み立てる"""
        inst = self.instance
        row = self.row(l)
        support = set()
        for entry in row:
            support |= entry.support()
        mapping = {}
        for exponents in support:
            c = [entry.terms.get(exponents, 0) for entry in row]
            mapping[exponents] = from_w_coords(inst, c).a_coords
        return VecPoly.from_monomial_map(inst.p, inst.n, inst.n, mapping)

    def evaluate(self, point: Sequence[int]) -> np.ndarray:
        values = [[int(entry.evaluate(point)) for entry in row] for row in self.entries]
        return np.array(values, dtype=np.int64)


def coordinate_matrix(inst: KzInstance) -> CoordinateMatrix:
    """
    I^[l] を単項式ごとに w 基底の座標に変換した (r)×(n-1) 行列

    Raises:
        CycleOutOfRange: r = 0 の場合
    """
    if inst.r == 0:
        raise CycleOutOfRange(f"r = 0 のため座標行列は空です: {inst.label()}")
    p, n = inst.p, inst.n
    entries: List[List[Poly]] = []
    for solution in all_hypergeometric_solutions(inst):
        rows: List[Dict[Exponents, int]] = [{} for _ in range(n - 1)]
        for exponents, vector in solution.poly.monomial_map().items():
            for j, c in enumerate(to_w_coords(inst, SingVector(vector))):
                if c:
                    rows[j][exponents] = c
        entries.append([Poly(p, n, terms) for terms in rows])
    return CoordinateMatrix(instance=inst, entries=entries)


def _check_ample(inst: KzInstance):
    if not inst.ample:
        raise PreconditionError(f"{inst.label()} は ample ではありません (r={inst.r}, n={inst.n})")


def det_constant(inst: KzInstance) -> FpScalar:
    """K = (-1)^{n-1} M_1! ... M_n! / (ΣM - (n-1)p)!"""
    p = inst.p
    value = FpScalar(1, p)
    for Mi in inst.M:
        value = value * factorial_mod_p(Mi, p)
    value = value / factorial_mod_p(inst.M_total - (inst.n - 1) * p, p)
    return -value if (inst.n - 1) % 2 else value


def det_gamma_constant(inst: KzInstance) -> FpScalar:
    """印刷されたガンマ表示 Γ(M_1+1)...Γ(M_n+1) / Γ(ΣM - (n-1)p + 1)"""
    p = inst.p
    value = FpScalar(1, p)
    for Mi in inst.M:
        value = value * gamma_fp(Mi + 1, p)
    return value / gamma_fp(inst.M_total - (inst.n - 1) * p + 1, p)


def det_closed_form(inst: KzInstance, constant: Optional[FpScalar] = None) -> Poly:
    """K ∏_{i<j} (-1)^{M_j} (z_j - z_i)^{M_i+M_j-p}"""
    _check_ample(inst)
    p, n, M = inst.p, inst.n, inst.M
    constant = det_constant(inst) if constant is None else constant
    result = Poly.constant(constant, p, n)
    for i in range(n):
        for j in range(i + 1, n):
            factor = difference(j, i, p, n) ** (M[i] + M[j] - p)
            result = result * (-factor if M[j] % 2 else factor)
    return result


def det_ode_check(inst: KzInstance, d: Poly) -> bool:
    """
    ∂d/∂z_i ∏_{j≠i}(z_i - z_j) = d Σ_{j≠i} (M_i + M_j) ∏_{k≠i,j}(z_i - z_k) が全ての i で成り立つか
    """
    if d.is_zero():
        return False
    for i in range(1, inst.n + 1):
        lhs = partial_derivative(d, i - 1, 1) * clearing_factor(inst, i)
        rhs = Poly.zero(inst.p, inst.n)
        for j in range(1, inst.n + 1):
            if j != i:
                weight = inst.M[i - 1] + inst.M[j - 1]
                rhs = rhs + clearing_factor(inst, i, exclude=(j,)).scale(weight)
        if lhs != d * rhs:
            return False
    return True


def det_leading_prediction(inst: KzInstance) -> Tuple[int, Exponents]:
    """
    det c(z) の次数 (n-1)ΣM - n(n-1)p/2 と id-先頭単項式

    z_k の指数は (n-k)(M_k - p) + Σ_{j>k} M_j（k < n）、z_n の指数は 0。
    """
    n, p, M = inst.n, inst.p, inst.M
    degree = (n - 1) * inst.M_total - n * (n - 1) * p // 2
    exponents = tuple((n - k) * (M[k - 1] - p) + sum(M[k:]) if k < n else 0 for k in range(1, n + 1))
    return degree, exponents


def det_divisibility_check(inst: KzInstance, det: Poly) -> bool:
    """全ての組 i < j で (z_i - z_j)^{M_i+M_j-p} が det を割り切るか"""
    for i in range(inst.n):
        for j in range(i + 1, inst.n):
            f = det
            for _ in range(inst.M[i] + inst.M[j] - inst.p):
                f, exact = divide_by_difference(f, i, j)
                if not exact:
                    return False
    return True


@dataclass
class DetReport:
    """行列式の定理の検証結果"""
    instance: KzInstance
    det: Poly
    closed_form: Poly
    equal: bool
    gamma_form_sign_offset: Optional[int]
    ode_ok: bool
    degree_ok: bool
    leading_monomial_ok: bool
    divisible: bool

    @property
    def passed(self) -> bool:
        return all([self.equal, self.ode_ok, self.degree_ok, self.leading_monomial_ok, self.divisible])

    def to_model(self) -> DetReportModel:
        return DetReportModel(
            instance=self.instance.to_model(),
            det=PolyModel.from_poly(self.det),
            closed_form=PolyModel.from_poly(self.closed_form),
            equal=self.equal,
            gamma_form_sign_offset=self.gamma_form_sign_offset,
            ode_ok=self.ode_ok,
            degree_ok=self.degree_ok,
            leading_monomial_ok=self.leading_monomial_ok,
            divisible=self.divisible,
        )


def verify_determinant(inst: KzInstance) -> DetReport:
    """
    det c(z) を余因子展開で計算し、階乗表示の閉公式と多項式として比較

    Raises:
        PreconditionError: ample でない場合
    """
    _check_ample(inst)
    det = det_poly(coordinate_matrix(inst).entries)
    closed = det_closed_form(inst)
    degree, exponents = det_leading_prediction(inst)
    nonzero = not det.is_zero()
    report = DetReport(
        instance=inst,
        det=det,
        closed_form=closed,
        equal=det == closed,
        gamma_form_sign_offset=sign_offset(det_gamma_constant(inst), det_constant(inst)),
        ode_ok=det_ode_check(inst, det),
        degree_ok=nonzero and det.is_homogeneous() and det.total_degree() == degree,
        leading_monomial_ok=nonzero and leading_term(det).exponents == exponents,
        divisible=nonzero and det_divisibility_check(inst, det),
    )
    logger.info("行列式 %s: equal=%s offset=%s", inst.label(), report.equal, report.gamma_form_sign_offset)
    return report


def degree_congruence_check(inst: KzInstance, I: VecPoly) -> bool:
    """
    斉次解の次数 d が d ≡ ΣM (mod p) を満たすか

    Raises:
        PreconditionError: I が 0、非斉次、または解でない場合
    """
    if I.is_zero() or not I.is_homogeneous():
        raise PreconditionError("非零の斉次多項式ベクトルである必要があります")
    if not verify_kz_solution(inst, I).passed:
        raise PreconditionError(f"KZ 系の解ではありません: {inst.label()}")
    return (I.total_degree() - inst.M_total) % inst.p == 0


@dataclass
class InitialValueSweep:
    """相異なる座標を持つ全ての点での c(x) の可逆性"""
    instance: KzInstance
    points: int = 0
    singular_points: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.points > 0 and not self.singular_points


def initial_value_sweep(inst: KzInstance, matrix: Optional[CoordinateMatrix] = None) -> InitialValueSweep:
    """
    ample なインスタンスで、相異なる座標の全ての点 x ∈ F_p^n で c(x) が可逆か検査

    Raises:
        PreconditionError: ample でない場合
    """
    _check_ample(inst)
    matrix = matrix or coordinate_matrix(inst)
    result = InitialValueSweep(instance=inst)
    for point in permutations(range(inst.p), inst.n):
        result.points += 1
        if rank_mod_p(matrix.evaluate(point), inst.p) != inst.n - 1:
            result.singular_points.append(point)
    logger.info("初期値の可逆性 %s: %d 点中 %d 点で特異", inst.label(), result.points, len(result.singular_points))
    return result
