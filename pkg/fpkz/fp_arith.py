"""
F_p 演算モジュール
逆元・階乗・Lucas 二項係数・F_p ガンマ関数・F_p ベータ積分
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Set, Tuple, Union

from sympy import isprime

from .errors import DomainError, ModulusMismatch, ZeroInverse


@dataclass(frozen=True)
class FpScalar:
    """法 p の剰余類（値は常に 0 <= value < p）"""
    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other: Union["FpScalar", int]) -> int:
        if isinstance(other, FpScalar):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f"法が一致しません: {self.modulus} と {other.modulus}"
                )
            return other.value
        return int(other)

    def __add__(self, other):
        return FpScalar(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return FpScalar(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return FpScalar(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return FpScalar(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.modulus)

    def __truediv__(self, other):
        return self * inv(FpScalar(self._coerce(other), self.modulus))

    def __rtruediv__(self, other):
        return FpScalar(self._coerce(other), self.modulus) * inv(self)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return inv(self) ** (-exponent)
        return FpScalar(pow(self.value, exponent, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            # 整数とは代表元 0..p-1 で比較（hash と整合させる）
            return other == self.value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


def fp(value: int, p: int) -> FpScalar:
    """整数を F_p の元に変換"""
    return FpScalar(int(value), p)


def is_prime(n: int) -> bool:
    """素数判定"""
    return bool(isprime(n))


def inv(a: FpScalar) -> FpScalar:
    """
    F_p における逆元

    Args:
        a: 0 でない剰余類

    Returns:
        FpScalar: a * inv(a) = 1 を満たす元

    Raises:
        ZeroInverse: a = 0 の場合
    """
    if a.value == 0:
        raise ZeroInverse(f"0 の逆元は存在しません (p={a.modulus})")
    return FpScalar(pow(a.value, -1, a.modulus), a.modulus)


def inv_mod(a: int, p: int) -> int:
    """整数版の逆元（内部計算用）"""
    return inv(FpScalar(a, p)).value


@lru_cache(maxsize=None)
def require_odd_prime(p: int) -> int:
    """p が奇素数でなければ DomainError"""
    if p < 3 or not is_prime(p):
        raise DomainError(f"p は奇素数である必要があります: {p}")
    return p


@lru_cache(maxsize=None)
def _factorial_table(p: int) -> Tuple[int, ...]:
    table = [1] * p
    for k in range(1, p):
        table[k] = table[k - 1] * k % p
    return tuple(table)


def factorial_mod_p(x: int, p: int) -> FpScalar:
    """x! mod p（x >= p なら 0）"""
    if x < 0:
        raise DomainError(f"負の数の階乗は定義されません: {x}")
    if x >= p:
        return FpScalar(0, p)
    return FpScalar(_factorial_table(p)[x], p)


def gamma_fp(x: int, p: int) -> FpScalar:
    """
    F_p ガンマ関数（Morita の積の定義を mod p で還元し周期的に拡張したもの）

    1 <= x <= p では (-1)^x * prod_{1<=j<x} j、Γ(0) = 1。

    Args:
        x: 任意の整数
        p: 奇素数

    Returns:
        FpScalar: Γ_{F_p}(x)
    """
    require_odd_prime(p)
    x0 = x % p
    if x0 == 0:
        # x = p の積表示 (-1)^p (p-1)! も Wilson の定理により 1
        return FpScalar(1, p)
    sign = -1 if x0 % 2 else 1
    return FpScalar(sign * _factorial_table(p)[x0 - 1], p)


def binom_mod_p(a: int, b: int, p: int) -> FpScalar:
    """
    Lucas の定理による二項係数 C(a, b) mod p

    Args:
        a: 非負整数
        b: 整数（b < 0 または b > a なら 0）
        p: 素数

    Returns:
        FpScalar: C(a, b) mod p
    """
    if b < 0 or a < 0 or b > a:
        return FpScalar(0, p)
    result = 1
    while a or b:
        a, a_digit = divmod(a, p)
        b, b_digit = divmod(b, p)
        if b_digit > a_digit:
            return FpScalar(0, p)
        result = result * math.comb(a_digit, b_digit) % p
    return FpScalar(result, p)


def beta_fp(a: int, b: int, p: int) -> FpScalar:
    """
    F_p ベータ積分 -a! b! / (a+b-p+1)!

    x^a (1-x)^b における x^{p-1} の係数に等しい。

    Args:
        a: 0 < a < p
        b: 0 < b < p
        p: 素数（p-1 <= a+b）

    Returns:
        FpScalar: ベータ積分の値

    Raises:
        DomainError: 前提条件を満たさない場合
    """
    if not (0 < a < p and 0 < b < p and p - 1 <= a + b):
        raise DomainError(f"beta_fp の定義域外です: a={a}, b={b}, p={p}")
    numerator = factorial_mod_p(a, p) * factorial_mod_p(b, p)
    return -numerator / factorial_mod_p(a + b - p + 1, p)


def _check_lemma_domain(A: int, B: int, p: int):
    if not (0 < A < p and 0 < B < p and p <= A + B):
        raise DomainError(f"A={A}, B={B} は 0<A<p, 0<B<p, p<=A+B を満たしません (p={p})")


def lemma_binomial_form(A: int, B: int, p: int) -> FpScalar:
    """B * C(B-1, p-A-1)"""
    _check_lemma_domain(A, B, p)
    return B * binom_mod_p(B - 1, p - A - 1, p)


def lemma_factorial_form(A: int, B: int, p: int) -> FpScalar:
    """(-1)^{A+1} A! B! / (A+B-p)!"""
    _check_lemma_domain(A, B, p)
    value = factorial_mod_p(A, p) * factorial_mod_p(B, p) / factorial_mod_p(A + B - p, p)
    return value if A % 2 else -value


def gamma_ratio(A: int, B: int, p: int) -> FpScalar:
    """Γ(A+1) Γ(B+1) / Γ(A+B-p+1)"""
    return gamma_fp(A + 1, p) * gamma_fp(B + 1, p) / gamma_fp(A + B - p + 1, p)


def lemma_gamma_form(A: int, B: int, p: int) -> FpScalar:
    """印刷されたガンマ表示 (-1)^A Γ(A+1) Γ(B+1) / Γ(A+B-p+1)"""
    _check_lemma_domain(A, B, p)
    value = gamma_ratio(A, B, p)
    return -value if A % 2 else value


def sign_offset(x, y, p: Optional[int] = None) -> Optional[int]:
    """
    x = (-1)^e y となる e を返す

    Args:
        x: スカラーまたはスカラーの列
        y: x と同じ形のスカラーまたは列
        p: 整数列を比較する場合の法

    Returns:
        Optional[int]: 0 または 1、どちらでも一致しなければ None
    """
    xs = _as_ints(x)
    ys = _as_ints(y)
    modulus = p or _modulus_of(x) or _modulus_of(y)
    if modulus is None or len(xs) != len(ys):
        return None
    if all((a - b) % modulus == 0 for a, b in zip(xs, ys)):
        return 0
    if all((a + b) % modulus == 0 for a, b in zip(xs, ys)):
        return 1
    return None


def _as_ints(value) -> Tuple[int, ...]:
    if isinstance(value, (FpScalar, int)):
        return (int(value),)
    return tuple(int(v) for v in value)


def _modulus_of(value) -> Optional[int]:
    if isinstance(value, FpScalar):
        return value.modulus
    if isinstance(value, (list, tuple)):
        for item in value:
            if isinstance(item, FpScalar):
                return item.modulus
    return None


@dataclass
class SignAudit:
    """ガンマ関数の恒等式と符号ずれの監査結果"""
    p: int
    wilson: bool
    reflection: bool
    reflection_literal_at_zero: bool
    periodicity: bool
    lemma_offsets: Set[Optional[int]]
    lemma_points: int

    @property
    def consistent(self) -> bool:
        return len(self.lemma_offsets) == 1 and None not in self.lemma_offsets

    @property
    def passed(self) -> bool:
        return self.wilson and self.reflection and self.periodicity and self.consistent


def reflection_holds(x: int, p: int) -> bool:
    """
    Γ(x) Γ(1-x) = (-1)^x を検査

    x ≡ 0 では指数を代表元 p で読む。
    """
    exponent = x % p or p
    expected = FpScalar(-1 if exponent % 2 else 1, p)
    return gamma_fp(x, p) * gamma_fp(1 - x, p) == expected


def gamma_sign_audit(p: int) -> SignAudit:
    """
    素数 p におけるガンマ恒等式の全数検査とガンマ表示の符号ずれの記録

    Args:
        p: 奇素数

    Returns:
        SignAudit: 監査結果
    """
    require_odd_prime(p)

    wilson = factorial_mod_p(p - 1, p) == p - 1
    reflection = all(reflection_holds(x, p) for x in range(p))
    literal_at_zero = gamma_fp(0, p) * gamma_fp(1, p) == 1
    periodicity = all(gamma_fp(x + p, p) == gamma_fp(x, p) for x in range(-2 * p, 2 * p + 1))

    offsets: Set[Optional[int]] = set()
    points = 0
    for A, B in lemma_domain(p):
        binomial = lemma_binomial_form(A, B, p)
        factorial = lemma_factorial_form(A, B, p)
        if binomial != factorial:
            offsets.add(None)
            continue
        offsets.add(sign_offset(lemma_gamma_form(A, B, p), factorial))
        points += 1

    return SignAudit(
        p=p,
        wilson=wilson,
        reflection=reflection,
        reflection_literal_at_zero=literal_at_zero,
        periodicity=periodicity,
        lemma_offsets=offsets,
        lemma_points=points,
    )


def lemma_domain(p: int) -> Iterable[Tuple[int, int]]:
    """0<A<p, 0<B<p, p<=A+B を満たす全ての (A, B)"""
    for A in range(1, p):
        for B in range(p - A, p):
            yield A, B
