"""
F_p 上の線形代数モジュール
Gauss-Jordan 消去、階数、核、連立方程式、ブロック逐次の核計算、多項式行列式
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .mpoly import Poly

logger = logging.getLogger(__name__)

# float64 の行列積が整数として正確な上限
_FLOAT_EXACT = 2 ** 53
_INT64_EXACT = 2 ** 63


def as_matrix(rows, p: int, cols: Optional[int] = None) -> np.ndarray:
    """入力を 0..p-1 に正規化した int64 の 2 次元配列に変換"""
    mat = np.array(rows, dtype=np.int64)
    if mat.size == 0:
        width = cols if cols is not None else (mat.shape[1] if mat.ndim == 2 else 0)
        return np.zeros((0, width), dtype=np.int64)
    if mat.ndim == 1:
        mat = mat.reshape((1, mat.size))
    return mat % p


def gauss_jordan(rows, p: int) -> Tuple[np.ndarray, List[int]]:
    """
    F_p 上の簡約階段形（RREF）を求める

    Args:
        rows: 2 次元の整数配列
        p: 素数

    Returns:
        Tuple[np.ndarray, List[int]]: (RREF 行列, ピボット列の一覧)
    """
    mat = as_matrix(rows, p)
    n_rows, n_cols = mat.shape
    pivots: List[int] = []
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        candidates = np.nonzero(mat[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot = int(candidates[0]) + row
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        mat[row] = (mat[row] * pow(int(mat[row, col]), -1, p)) % p
        factors = mat[:, col].copy()
        factors[row] = 0
        targets = np.nonzero(factors)[0]
        if targets.size:
            mat[targets] = (mat[targets] - np.outer(factors[targets], mat[row])) % p
        pivots.append(col)
        row += 1
    return mat, pivots


def rank_mod_p(rows, p: int) -> int:
    """F_p 上の階数"""
    mat = as_matrix(rows, p)
    if mat.size == 0:
        return 0
    return len(gauss_jordan(mat, p)[1])


def nullspace_mod_p(rows, p: int, cols: Optional[int] = None) -> np.ndarray:
    """
    A x = 0 の解空間の基底（行ベクトル）

    自由変数ごとに、その成分が 1、他の自由変数が 0 の基底ベクトルを返す。
    """
    mat = as_matrix(rows, p, cols)
    n_cols = mat.shape[1]
    if mat.shape[0] == 0:
        return np.eye(n_cols, dtype=np.int64)
    reduced, pivots = gauss_jordan(mat, p)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    basis = np.zeros((len(free), n_cols), dtype=np.int64)
    basis[np.arange(len(free)), free] = 1
    if pivots and free:
        basis[:, pivots] = (-reduced[:len(pivots)][:, free].T) % p
    return basis


def row_basis(rows, p: int, cols: Optional[int] = None) -> np.ndarray:
    """行空間の正準基底（RREF の非零行）"""
    mat = as_matrix(rows, p, cols)
    if mat.shape[0] == 0:
        return mat
    reduced, pivots = gauss_jordan(mat, p)
    return reduced[:len(pivots)]


def solve_mod_p(a, b, p: int) -> np.ndarray:
    """
    A x = b を F_p 上で解く（解が一意の場合のみ）

    Raises:
        ValueError: 解が存在しない、または一意でない場合
    """
    mat = as_matrix(a, p)
    rhs = as_matrix(b, p).reshape(-1, 1)
    if rhs.shape[0] != mat.shape[0]:
        raise ValueError(f"右辺の長さ {rhs.shape[0]} が行数 {mat.shape[0]} と一致しません")
    n_cols = mat.shape[1]
    reduced, pivots = gauss_jordan(np.hstack([mat, rhs]), p)
    if n_cols in pivots:
        raise ValueError("連立方程式は F_p 上で解を持ちません")
    if len(pivots) != n_cols:
        raise ValueError("連立方程式の解が一意ではありません")
    return reduced[:n_cols, n_cols].copy()


def matmul_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """行列積 mod p（内積の上限に応じて float64、int64、Python 整数を使い分ける）"""
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    bound = inner * (p - 1) ** 2
    if bound < _FLOAT_EXACT:
        product = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(product).astype(np.int64) % p
    if bound < _INT64_EXACT:
        return (a.astype(np.int64) @ b.astype(np.int64)) % p
    # Python 整数で計算
    product = (a.astype(object) @ b.astype(object)) % p
    return product.astype(np.int64)


def blocked_nullspace(blocks: Iterable, cols: int, p: int) -> np.ndarray:
    """
    行ブロックを順に課して核を絞り込む

    N = I から始め、各ブロック A_b について K = ker(A_b N)、N <- N K とする。
    最後に RREF をとり、順序に依存しない正準基底を返す。

    Args:
        blocks: 列数 cols の行ブロックの列
        cols: 未知数の個数
        p: 素数

    Returns:
        np.ndarray: 基底ベクトルを行とする配列（k × cols）
    """
    basis: Optional[np.ndarray] = None  # cols × k（列が基底）
    for index, block in enumerate(blocks):
        block = as_matrix(block, p, cols)
        if block.shape[0] == 0:
            continue
        reduced = block if basis is None else matmul_mod_p(block, basis, p)
        kernel = nullspace_mod_p(reduced, p, reduced.shape[1])
        basis = kernel.T if basis is None else matmul_mod_p(basis, kernel.T, p)
        logger.debug("ブロック %d: 核の次元 %d", index, basis.shape[1])
        if basis.shape[1] == 0:
            break
    if basis is None:
        return np.eye(cols, dtype=np.int64)
    return row_basis(basis.T, p, cols)


def _minor(matrix: Sequence[Sequence[Poly]], col: int) -> List[List[Poly]]:
    return [list(row[:col]) + list(row[col + 1:]) for row in matrix[1:]]


def det_poly(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """
    多項式を成分とする正方行列の行列式（第 1 行に沿った余因子展開）

    Raises:
        ValueError: 空または正方でない場合
    """
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise ValueError("正方行列である必要があります")
    if size == 1:
        return matrix[0][0]
    if size == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = Poly.zero(matrix[0][0].p, matrix[0][0].arity)
    for col in range(size):
        element = matrix[0][col]
        if element.is_zero():
            continue
        term = element * det_poly(_minor(matrix, col))
        total = total + term if col % 2 == 0 else total - term
    return total
