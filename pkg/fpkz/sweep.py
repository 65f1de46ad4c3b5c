"""
インスタンス掃引モジュール
受け入れ検査で使う (p, q, m) の組を列挙
"""

from itertools import product
from typing import Iterable, Iterator, List, Tuple

from .config import SweepConfig
from .fp_arith import is_prime
from .kz_core import KzInstance, new_instance

# 6 変数の計算例と、その σ（恒等置換、s_{3,4}、逆順）
WORKED_EXAMPLE = (13, 3, (2, 2, 2, 1, 1, 1))
WORKED_SIGMAS: Tuple[Tuple[int, ...], ...] = (
    (1, 2, 3, 4, 5, 6),
    (1, 2, 4, 3, 5, 6),
    (6, 5, 4, 3, 2, 1),
)


def instances(primes: Iterable[int], q_values: Iterable[int], n_values: Iterable[int],
              max_prime: int = 0, max_n: int = 0) -> Iterator[KzInstance]:
    """
    0 < m_i < q の全ての m について、条件を満たす (p, q, m) を列挙

    Args:
        primes: p の候補
        q_values: q の候補（素数かつ q < p のものだけ使う）
        n_values: n の候補（n < p のものだけ使う）
        max_prime: 0 でなければ p <= max_prime に制限
        max_n: 0 でなければ n <= max_n に制限
    """
    for p in primes:
        if max_prime and p > max_prime:
            continue
        for q in q_values:
            if not is_prime(q) or q >= p:
                continue
            for n in n_values:
                if n < 2 or n >= p or (max_n and n > max_n):
                    continue
                for m in product(range(1, q), repeat=n):
                    yield new_instance(p, q, m)


def solution_sweep(sweep: SweepConfig) -> Iterator[KzInstance]:
    """r >= 1 のインスタンス（超幾何解を持つもの）"""
    return (inst for inst in instances(sweep.primes, sweep.q_values, sweep.n_values) if inst.r >= 1)


def all_sweep(sweep: SweepConfig) -> Iterator[KzInstance]:
    return instances(sweep.primes, sweep.q_values, sweep.n_values)


def ample_sweep(sweep: SweepConfig, max_prime: int, max_n: int = 0) -> List[KzInstance]:
    """ample なインスタンス（max_prime, max_n で制限）"""
    return [
        inst for inst in instances(sweep.primes, sweep.q_values, sweep.n_values, max_prime, max_n)
        if inst.ample
    ]


def odd_primes_up_to(bound: int) -> List[int]:
    return [p for p in range(3, bound + 1) if is_prime(p)]


def sample_sigmas(n: int) -> List[Tuple[int, ...]]:
    """先頭項の検査に使う置換：恒等置換、逆順、隣接互換 (1 2)、巡回置換"""
    identity = tuple(range(1, n + 1))
    candidates = [
        identity,
        identity[::-1],
        (2, 1) + identity[2:],
        identity[1:] + identity[:1],
    ]
    return list(dict.fromkeys(candidates))
