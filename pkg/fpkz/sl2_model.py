"""
sl2 ウェイト空間モデル
f^(i)v 基底、Sing V[-2]、同型 ι、w_j 基底、Casimir 作用素による Ω_ij の同定
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import NotSingular
from .fp_arith import inv_mod
from .kz_core import KzInstance, M_WEIGHTED, omega

# テンソル積の基底ベクトルは各因子の f の冪の組で表す
State = Tuple[int, ...]
SparseVector = Dict[State, int]


@dataclass(frozen=True)
class SingVector:
    """Sing V[-2] の元（f^(i)v 基底の座標と、任意で w_j 基底の座標）"""
    a_coords: Tuple[int, ...]
    w_coords: Optional[Tuple[int, ...]] = None


def _add(target: SparseVector, state: State, value: int, p: int):
    value = (target.get(state, 0) + value) % p
    if value:
        target[state] = value
    else:
        target.pop(state, None)


def e_action(inst: KzInstance, i: int, vec: SparseVector) -> SparseVector:
    """e^(i): e f^k v_m = k (m - k + 1) f^{k-1} v_m（i は 0 始まり）"""
    m, p = inst.m[i], inst.p
    result: SparseVector = {}
    for state, coeff in vec.items():
        k = state[i]
        if k == 0:
            continue
        lowered = state[:i] + (k - 1,) + state[i + 1:]
        _add(result, lowered, coeff * k * (m - k + 1), p)
    return result


def f_action(inst: KzInstance, i: int, vec: SparseVector) -> SparseVector:
    """f^(i): f^k v_m -> f^{k+1} v_m（k+1 > m なら 0）"""
    m, p = inst.m[i], inst.p
    result: SparseVector = {}
    for state, coeff in vec.items():
        k = state[i]
        if k + 1 > m:
            continue
        raised = state[:i] + (k + 1,) + state[i + 1:]
        _add(result, raised, coeff, p)
    return result


def h_action(inst: KzInstance, i: int, vec: SparseVector) -> SparseVector:
    """h^(i): f^k v_m -> (m - 2k) f^k v_m"""
    m, p = inst.m[i], inst.p
    result: SparseVector = {}
    for state, coeff in vec.items():
        _add(result, state, coeff * (m - 2 * state[i]), p)
    return result


def iota(inst: KzInstance, a: Sequence[int]) -> SparseVector:
    """ι: 座標ベクトル a -> Σ a_i f^(i)v"""
    vec: SparseVector = {}
    for i, value in enumerate(a):
        state = tuple(1 if k == i else 0 for k in range(inst.n))
        _add(vec, state, int(value), inst.p)
    return vec


def iota_inverse(inst: KzInstance, vec: SparseVector) -> Tuple[int, ...]:
    """V[-2] の元を f^(i)v 基底の座標に戻す"""
    coords = [0] * inst.n
    for state, coeff in vec.items():
        if sum(state) != 1:
            raise ValueError(f"V[-2] の外の基底ベクトルです: {state}")
        coords[state.index(1)] = coeff % inst.p
    return tuple(coords)


def casimir_apply(inst: KzInstance, i: int, j: int, vec: SparseVector) -> SparseVector:
    """Ω^sl2_ij = 1/2 h^(i)h^(j) + e^(i)f^(j) + f^(i)e^(j) - m_i m_j / 2（i, j は 0 始まり）"""
    p = inst.p
    half = inv_mod(2, p)
    result: SparseVector = {}
    for state, coeff in h_action(inst, i, h_action(inst, j, vec)).items():
        _add(result, state, coeff * half, p)
    for state, coeff in e_action(inst, i, f_action(inst, j, vec)).items():
        _add(result, state, coeff, p)
    for state, coeff in f_action(inst, i, e_action(inst, j, vec)).items():
        _add(result, state, coeff, p)
    shift = inst.m[i] * inst.m[j] * half
    for state, coeff in vec.items():
        _add(result, state, -coeff * shift, p)
    return result


def casimir_matrix(inst: KzInstance, i: int, j: int) -> np.ndarray:
    """
    V[-2] に制限した Casimir 作用素の f^(k)v 基底での行列

    Args:
        inst: インスタンス
        i: 1 始まりの添字
        j: 1 始まりの添字（i と異なる）

    Returns:
        np.ndarray: n×n 行列（列 k が f^(k)v の像）
    """
    if i == j or not (1 <= i <= inst.n and 1 <= j <= inst.n):
        raise IndexError(f"添字 (i, j) = ({i}, {j}) は不正です (n={inst.n})")
    mat = np.zeros((inst.n, inst.n), dtype=np.int64)
    for k in range(inst.n):
        unit = [0] * inst.n
        unit[k] = 1
        image = casimir_apply(inst, i - 1, j - 1, iota(inst, unit))
        mat[:, k] = iota_inverse(inst, image)
    return mat


def raising_value(inst: KzInstance, a: Sequence[int]) -> int:
    """e = Σ e^(i) を ι(a) に作用させたときの v の係数"""
    total: SparseVector = {}
    vec = iota(inst, a)
    for i in range(inst.n):
        for state, coeff in e_action(inst, i, vec).items():
            _add(total, state, coeff, inst.p)
    return total.get((0,) * inst.n, 0)


def is_singular(inst: KzInstance, a: Sequence[int]) -> bool:
    """ι(a) が e の核（Sing V[-2]）に属するか"""
    return raising_value(inst, a) == 0


def w_basis(inst: KzInstance) -> List[SingVector]:
    """w_j = f^(j)v / M_j - f^(j+1)v / M_{j+1}（j = 1..n-1）"""
    p, M = inst.p, inst.M
    basis = []
    for j in range(inst.n - 1):
        a = [0] * inst.n
        a[j] = inv_mod(M[j], p)
        a[j + 1] = -inv_mod(M[j + 1], p) % p
        w = [0] * (inst.n - 1)
        w[j] = 1
        basis.append(SingVector(tuple(a), tuple(w)))
    return basis


def to_w_coords(inst: KzInstance, v: SingVector) -> Tuple[int, ...]:
    """
    w_j 基底での座標 c_j = Σ_{i<=j} M_i a_i

    Raises:
        NotSingular: Σ m_i a_i ≠ 0 の場合
    """
    a = tuple(int(x) % inst.p for x in v.a_coords)
    if len(a) != inst.n:
        raise ValueError(f"座標の長さ {len(a)} が n={inst.n} と一致しません")
    if sum(mi * ai for mi, ai in zip(inst.m, a)) % inst.p:
        raise NotSingular(f"{a} は Sing V[-2] に属しません")
    coords = []
    partial = 0
    for j in range(inst.n - 1):
        partial = (partial + inst.M[j] * a[j]) % inst.p
        coords.append(partial)
    return tuple(coords)


def from_w_coords(inst: KzInstance, c: Sequence[int]) -> SingVector:
    """Σ c_j w_j を f^(i)v 基底で表す"""
    if len(c) != inst.n - 1:
        raise ValueError(f"w 座標の長さは n-1 である必要があります: {len(c)}")
    p = inst.p
    a = [0] * inst.n
    for w, coeff in zip(w_basis(inst), c):
        for k in range(inst.n):
            a[k] = (a[k] + coeff * w.a_coords[k]) % p
    return SingVector(tuple(a), tuple(int(x) % p for x in c))


def omega_in_w_basis(inst: KzInstance, matrix: np.ndarray) -> np.ndarray:
    """Sing V[-2] を保つ行列を w 基底で表す（(n-1)×(n-1)）"""
    p = inst.p
    size = inst.n - 1
    result = np.zeros((size, size), dtype=np.int64)
    for k, w in enumerate(w_basis(inst)):
        image = (matrix @ np.array(w.a_coords, dtype=np.int64)) % p
        result[:, k] = to_w_coords(inst, SingVector(tuple(int(x) for x in image)))
    return result


def trace_on_sing(inst: KzInstance, i: int, j: int) -> int:
    """Ω^M_ij の Sing V[-2] 上のトレース"""
    restricted = omega_in_w_basis(inst, omega(inst, i, j, M_WEIGHTED))
    return int(np.trace(restricted)) % inst.p


def preserves_sing(inst: KzInstance, matrix: np.ndarray) -> bool:
    """行列が Sing V[-2] を保つか（w 基底の像で判定）"""
    p = inst.p
    for w in w_basis(inst):
        image = (matrix @ np.array(w.a_coords, dtype=np.int64)) % p
        if sum(int(mi) * int(x) for mi, x in zip(inst.m, image)) % p:
            return False
    return True
