"""
総当たりオラクルモジュール
斉次多項式解の空間を F_p 上の核計算で求め、超幾何解の加群への簡約を構成的に行う
"""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .analysis import coordinate_matrix
from .construct import all_hypergeometric_solutions, hypergeometric_solution
from .errors import CycleOutOfRange, DomainError, NotASolution, NotSingular, PreconditionError, ResourceLimit
from .kz_core import STANDARD, KzInstance, clearing_factor, frobenius_twist, hypergeometric_L, omega, verify_kz_solution
from .linalg import blocked_nullspace, gauss_jordan, nullspace_mod_p, row_basis, solve_mod_p
from .mpoly import Exponents, Poly, VecPoly, identity_sigma, leading_term, lex_key, partial_derivative
from .schemas import CertificateTermModel, PolyModel, ReductionModel
from .sl2_model import SingVector, to_w_coords

logger = logging.getLogger(__name__)

DEFAULT_MAX_UNKNOWNS = 20000
BLOCK_ROWS = 200


def monomials_of_degree(n: int, d: int) -> List[Exponents]:
    """n 変数 d 次の単項式（id-辞書式の降順）"""
    if d < 0:
        return []
    if n == 1:
        return [(d,)]
    result: List[Exponents] = []
    for first in range(d, -1, -1):
        result.extend((first,) + rest for rest in monomials_of_degree(n - 1, d - first))
    return result


def unknown_count(n: int, d: int) -> int:
    """d 次斉次解の係数の個数 n C(d+n-1, n-1)"""
    return n * comb(d + n - 1, n - 1)


def _elimination_matrix(inst: KzInstance) -> np.ndarray:
    """未知数 (I_1..I_{n-1}) から (I_1..I_n) への n×(n-1) 行列（I_n = -Σ m_i I_i / m_n）"""
    p, n = inst.p, inst.n
    T = np.zeros((n, n - 1), dtype=np.int64)
    last = pow(inst.m[-1], -1, p)
    for i in range(n - 1):
        T[i, i] = 1
        T[n - 1, i] = (-inst.m[i] * last) % p
    return T


def _add_exponents(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def _equation_blocks(inst: KzInstance, monomials: List[Exponents], T: np.ndarray) -> Iterator[np.ndarray]:
    """
    分母を払った第 j 式の先頭 n-1 座標を係数の一次式として組み立て、行ブロックごとに返す

    行は (j, 座標 a, 単項式 ν)、|ν| = d + n - 2。第 n 座標は代数的制約から従う。
    """
    p, n, q = inst.p, inst.n, inst.q
    d = sum(monomials[0]) if monomials else 0
    targets = monomials_of_degree(n, d + n - 2)
    t_index = {e: k for k, e in enumerate(targets)}
    width = n - 1
    n_targets = len(targets)

    for j in range(1, n + 1):
        block = np.zeros((width * n_targets, width * len(monomials)), dtype=np.int64)
        lead = clearing_factor(inst, j)
        couplings = []
        for l in range(1, n + 1):
            if l != j:
                W = (omega(inst, j, l, STANDARD) @ T) % p
                couplings.append((clearing_factor(inst, j, exclude=(l,)), W))

        for mu_index, mu in enumerate(monomials):
            col = mu_index * width
            e = mu[j - 1]
            if e % p:
                lowered = mu[:j - 1] + (e - 1,) + mu[j:]
                for pe, pc in lead.terms.items():
                    row = t_index[_add_exponents(lowered, pe)]
                    value = q * e * pc
                    for i in range(width):
                        block[i * n_targets + row, col + i] += value
            for factor, W in couplings:
                for pe, pc in factor.terms.items():
                    row = t_index[_add_exponents(mu, pe)]
                    for a in range(width):
                        for i in range(width):
                            if W[a, i]:
                                block[a * n_targets + row, col + i] -= pc * W[a, i]
        block %= p
        for start in range(0, block.shape[0], BLOCK_ROWS):
            yield block[start:start + BLOCK_ROWS]


def solve_homogeneous(inst: KzInstance, d: int, max_unknowns: int = DEFAULT_MAX_UNKNOWNS) -> List[VecPoly]:
    """
    d 次斉次の多項式解の空間の基底

    係数を未知数とする連立一次方程式の核を求める。基底は、列を単項式の id-辞書式降順
    （同じ単項式では座標順）に並べた簡約階段形の行であり、入力に対して決定的。

    Args:
        inst: インスタンス
        d: 斉次次数（0 以上）
        max_unknowns: 未知数の上限

    Returns:
        List[VecPoly]: 基底（空なら解は 0 のみ）

    Raises:
        DomainError: d < 0 の場合
        ResourceLimit: 未知数が上限を超える場合
    """
    if d < 0:
        raise DomainError(f"次数 d={d} は 0 以上である必要があります")
    count = unknown_count(inst.n, d)
    if count > max_unknowns:
        raise ResourceLimit(f"未知数 {count} が上限 {max_unknowns} を超えています ({inst.label()}, d={d})")

    p, n = inst.p, inst.n
    monomials = monomials_of_degree(n, d)
    T = _elimination_matrix(inst)
    cols = (n - 1) * len(monomials)
    kernel = blocked_nullspace(_equation_blocks(inst, monomials, T), cols, p)

    basis = []
    for row in kernel:
        mapping = {}
        for mu_index, mu in enumerate(monomials):
            unknowns = row[mu_index * (n - 1):(mu_index + 1) * (n - 1)]
            if unknowns.any():
                mapping[mu] = tuple(int(x) for x in (T @ unknowns) % p)
        basis.append(VecPoly.from_monomial_map(p, n, n, mapping))
    logger.debug("斉次解 %s d=%d: 未知数 %d, 次元 %d", inst.label(), d, count, len(basis))
    return basis


def _flatten(vectors: Sequence[VecPoly]) -> Tuple[np.ndarray, List[Exponents]]:
    """多項式ベクトルを (単項式の id-辞書式降順, 座標) を列とする行列に変換"""
    if not vectors:
        return np.zeros((0, 0), dtype=np.int64), []
    arity, n = vectors[0].arity, vectors[0].n
    support = set()
    for v in vectors:
        support |= v.support()
    sigma = identity_sigma(arity)
    keys = sorted(support, key=lambda e: lex_key(e, sigma), reverse=True)
    mat = np.zeros((len(vectors), n * len(keys)), dtype=np.int64)
    for r, v in enumerate(vectors):
        for k, e in enumerate(keys):
            mat[r, k * n:(k + 1) * n] = v.coefficient_vector(e)
    return mat, keys


def _unflatten(rows: np.ndarray, keys: List[Exponents], p: int, arity: int, n: int) -> List[VecPoly]:
    result = []
    for row in rows:
        mapping = {e: tuple(int(x) for x in row[k * n:(k + 1) * n]) for k, e in enumerate(keys)}
        result.append(VecPoly.from_monomial_map(p, arity, n, mapping))
    return result


def leading_echelon(basis: Sequence[VecPoly]) -> List[VecPoly]:
    """id-先頭項が互いに異なるように簡約し直した基底（一次従属な元は除く）"""
    if not basis:
        return []
    mat, keys = _flatten(basis)
    p = basis[0].p
    return _unflatten(row_basis(mat, p, mat.shape[1]), keys, p, basis[0].arity, basis[0].n)


def same_span(a: Sequence[VecPoly], b: Sequence[VecPoly]) -> bool:
    """二つの多項式ベクトルの族が同じ F_p 部分空間を張るか"""
    a_basis = leading_echelon(a)
    b_basis = leading_echelon(b)
    return len(a_basis) == len(b_basis) and all(x == y for x, y in zip(a_basis, b_basis))


def module_span(inst: KzInstance, d: int, above: int = 0) -> List[VecPoly]:
    """
    超幾何解の加群の d 次部分 {z^{pa} I^[l] : p|a| + δ_l = d} の基底

    above を指定すると l > above の I^[l] だけから作る。
    """
    generators: List[VecPoly] = []
    for solution in all_hypergeometric_solutions(inst):
        shift = d - solution.degree
        if solution.l <= above or shift < 0 or shift % inst.p:
            continue
        for a in monomials_of_degree(inst.n, shift // inst.p):
            generators.append(frobenius_twist(solution.poly, a))
    return leading_echelon(generators)


def admissible_solutions(inst: KzInstance, d: int, L: Optional[Sequence[int]] = None,
                         basis: Optional[Sequence[VecPoly]] = None,
                         max_unknowns: int = DEFAULT_MAX_UNKNOWNS) -> List[VecPoly]:
    """
    d 次斉次解のうち L-admissible なもの（各 j で ∂^{L_j} I / ∂z_j^{L_j} = 0）の基底

    L の既定値は (M_1+1, ..., M_n+1)。
    """
    L = tuple(hypergeometric_L(inst) if L is None else L)
    if basis is None:
        basis = solve_homogeneous(inst, d, max_unknowns)
    if not basis:
        return []
    p, n = inst.p, inst.n
    # 微分で消えない単項式の係数が 0 であることを課す
    forbidden = [
        e for e in monomials_of_degree(n, d)
        if any(not partial_derivative(Poly.monomial(e, 1, p), j, L[j]).is_zero() for j in range(n))
    ]
    constraints = np.array([[c for e in forbidden for c in v.coefficient_vector(e)] for v in basis],
                           dtype=np.int64).reshape(len(basis), n * len(forbidden))
    combos = nullspace_mod_p(constraints.T, p, len(basis))
    vectors = []
    for combo in combos:
        total = VecPoly.zero(p, n, n)
        for c, v in zip(combo, basis):
            if c:
                total = total + v.scale(int(c))
        vectors.append(total)
    return leading_echelon(vectors)


@dataclass
class ReductionCertificate:
    """I = Σ c_l(z) I^[l](z)、c_l ∈ F_p[z^p]"""
    instance: KzInstance
    terms: List[Tuple[int, Poly]] = field(default_factory=list)
    remainder_zero: bool = True

    @property
    def reducible(self) -> bool:
        return True

    def combine(self) -> VecPoly:
        inst = self.instance
        total = VecPoly.zero(inst.p, inst.n, inst.n)
        for l, coeff in self.terms:
            total = total + hypergeometric_solution(inst, l).poly.scale(coeff)
        return total

    def to_model(self) -> ReductionModel:
        return ReductionModel(
            instance=self.instance.to_model(),
            reducible=True,
            terms=[CertificateTermModel(l=l, coeff_poly=PolyModel.from_poly(c)) for l, c in self.terms],
        )


@dataclass
class Irreducible:
    """どの z^{pa} I^[l] の先頭項とも一致しない先頭項"""
    instance: KzInstance
    leading_coeff: Tuple[int, ...]
    leading_exponents: Exponents

    @property
    def reducible(self) -> bool:
        return False

    def to_model(self) -> ReductionModel:
        return ReductionModel(
            instance=self.instance.to_model(),
            reducible=False,
            leading_coeff=list(self.leading_coeff),
            leading_exponents=list(self.leading_exponents),
        )


def _match_leading(target: Tuple[int, ...], vectors: List[Tuple[int, ...]], p: int) -> Optional[List[int]]:
    """target = Σ c_k vectors[k] となる係数（存在しなければ None）"""
    if not vectors:
        return None
    augmented = np.array([list(col) for col in zip(*vectors, target)], dtype=np.int64)
    reduced, pivots = gauss_jordan(augmented, p)
    if len(vectors) in pivots:
        return None
    coeffs = [0] * len(vectors)
    for row, col in enumerate(pivots):
        coeffs[col] = int(reduced[row, -1])
    return coeffs


def reduce_to_hypergeometric(inst: KzInstance, I: VecPoly) -> Union[ReductionCertificate, Irreducible]:
    """
    多項式解を F_p 超幾何解の加群の元として表す

    id-先頭項を c z^a (I^[l] の id-先頭項)（a の成分は全て p の倍数）と照合して引き、
    0 になるか照合に失敗するまで繰り返す。

    Raises:
        NotASolution: I が KZ 系の解でない場合
    """
    if not verify_kz_solution(inst, I).passed:
        raise NotASolution(f"入力は KZ 系の解ではありません: {inst.label()}")
    p = inst.p
    solutions = {s.l: s.poly for s in all_hypergeometric_solutions(inst)}
    leads = {l: leading_term(poly) for l, poly in solutions.items()}
    coeffs: Dict[int, Dict[Exponents, int]] = {l: {} for l in solutions}

    remainder = I
    steps = 0
    while not remainder.is_zero():
        lt = leading_term(remainder)
        candidates = []
        for l, lead in leads.items():
            shift = tuple(a - b for a, b in zip(lt.exponents, lead.exponents))
            if all(s >= 0 and s % p == 0 for s in shift):
                candidates.append((l, shift))
        match = _match_leading(lt.coeff_vector(), [leads[l].coeff_vector() for l, _ in candidates], p)
        if match is None:
            logger.debug("簡約できません %s: 先頭単項式 %s", inst.label(), lt.exponents)
            return Irreducible(inst, lt.coeff_vector(), lt.exponents)
        for (l, shift), c in zip(candidates, match):
            if c:
                remainder = remainder - frobenius_twist(solutions[l], [s // p for s in shift]).scale(c)
                coeffs[l][shift] = (coeffs[l].get(shift, 0) + c) % p
        steps += 1

    terms = [(l, Poly(p, inst.n, c)) for l, c in sorted(coeffs.items()) if any(c.values())]
    logger.debug("簡約 %s: %d 手順, 項 %d", inst.label(), steps, len(terms))
    return ReductionCertificate(instance=inst, terms=terms)


def _check_cycle(inst: KzInstance, l: int):
    if not 1 <= l <= inst.r:
        raise CycleOutOfRange(f"l={l} は 1..r の範囲外です (r={inst.r}, {inst.label()})")


def _reduce_modulo(rows: np.ndarray, span: np.ndarray, p: int) -> np.ndarray:
    """span の行空間を法とした正規形（span の RREF のピボット成分を 0 にする）"""
    if span.shape[0] == 0 or rows.shape[0] == 0:
        return rows % p
    reduced, pivots = gauss_jordan(span, p)
    if not pivots:
        return rows % p
    return (rows - rows[:, pivots] @ reduced[:len(pivots)]) % p


def uniqueness_check(inst: KzInstance, l: int, max_unknowns: int = DEFAULT_MAX_UNKNOWNS,
                     basis: Optional[Sequence[VecPoly]] = None) -> bool:
    """
    δ_l 次の解のうち I^[l] と同じ id-先頭項を持つものが I^[l] だけか

    l' > l の z^{pa} I^[l'] も同じ δ_l 次に現れるので、それらの F_p[z^p] 上の張る空間を
    法として比べる。正規形の解空間に、先頭単項式が I^[l] の正規形の先頭単項式より
    小さい元がなければ一意。

    Args:
        inst: 超幾何的な組
        l: 1 <= l <= r
        max_unknowns: 未知数の上限
        basis: 計算済みの δ_l 次解空間の基底

    Returns:
        bool: 一意なら True（I^[l] が解空間に含まれない場合や上位の加群に入る場合は False）
    """
    _check_cycle(inst, l)
    solution = hypergeometric_solution(inst, l)
    if basis is None:
        basis = solve_homogeneous(inst, solution.degree, max_unknowns)
    if not same_span(basis, list(basis) + [solution.poly]):
        logger.info("I^[%d] が解空間に含まれません %s", l, inst.label())
        return False

    p, n = inst.p, inst.n
    lower = module_span(inst, solution.degree, above=l)
    mat, _ = _flatten(list(lower) + list(basis) + [solution.poly])
    k = len(lower)
    normal = _reduce_modulo(mat[k:], mat[:k], p)
    target = np.nonzero(normal[-1])[0]
    if target.size == 0:
        logger.info("I^[%d] が l' > %d の加群に含まれます %s", l, l, inst.label())
        return False
    _, pivots = gauss_jordan(normal[:-1], p)
    # 列は単項式の降順なので、列の単項式番号が大きいほど小さい単項式
    top = int(target[0]) // n
    return all(col // n <= top for col in pivots)


def initial_value(inst: KzInstance, x: Sequence[int], w: SingVector) -> Tuple[int, ...]:
    """
    w = Σ c_l I^[l](x) を満たす唯一の (c_1, ..., c_{n-1})

    Raises:
        PreconditionError: ample でない、x の座標が重複する、w が特異ベクトルでない場合
    """
    if not inst.ample:
        raise PreconditionError(f"{inst.label()} は ample ではありません")
    point = tuple(int(v) % inst.p for v in x)
    if len(point) != inst.n or len(set(point)) != inst.n:
        raise PreconditionError(f"x は相異なる n={inst.n} 個の座標を持つ必要があります: {tuple(x)}")
    try:
        target = to_w_coords(inst, w)
    except NotSingular as e:
        raise PreconditionError(str(e)) from e
    values = coordinate_matrix(inst).evaluate(point)
    try:
        solution = solve_mod_p(values.T, target, inst.p)
    except ValueError as e:
        raise PreconditionError(f"c(x) が可逆ではありません: {point}") from e
    return tuple(int(c) for c in solution)
