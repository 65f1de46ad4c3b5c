"""
多変数多項式モジュール
F_p 上の疎な多変数多項式と、変数の置換で定まる辞書式順序での先頭項
"""

import operator
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from .errors import ArityMismatch, DomainError, ModulusMismatch, ZeroPolynomial
from .fp_arith import FpScalar, binom_mod_p

Exponents = Tuple[int, ...]
Scalar = Union[int, FpScalar]


def identity_sigma(n: int) -> Tuple[int, ...]:
    """恒等置換 (1, ..., n)"""
    return tuple(range(1, n + 1))


def validate_sigma(sigma: Sequence[int], arity: int) -> Tuple[int, ...]:
    """置換 σ（1 始まり）を検査して返す"""
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)) or len(sigma) > arity:
        raise DomainError(f"置換として不正です: {sigma}")
    return sigma


def lex_key(exponents: Exponents, sigma: Sequence[int]) -> Tuple[int, ...]:
    """
    >_σ を実現するソートキー

    z_{σ_1} の指数を最初に比較し、次に z_{σ_2}、… の順に比較する。
    σ に現れないスロットは後ろに自然な順で並べる。
    """
    head = tuple(exponents[s - 1] for s in sigma)
    return head + tuple(exponents[len(sigma):])


@dataclass(frozen=True)
class LeadingTerm:
    """σ-先頭項（係数・単項式・順序）"""
    coeff: Union[int, Tuple[int, ...]]
    exponents: Exponents
    sigma: Tuple[int, ...]
    modulus: int

    def coeff_vector(self) -> Tuple[int, ...]:
        if isinstance(self.coeff, tuple):
            return self.coeff
        return (self.coeff,)


class Poly:
    """F_p 係数の疎な多変数多項式（値として扱う）"""

    __slots__ = ("p", "arity", "terms")

    def __init__(self, p: int, arity: int, terms: Optional[Dict[Exponents, int]] = None):
        self.p = p
        self.arity = arity
        canonical: Dict[Exponents, int] = {}
        for exponents, coeff in (terms or {}).items():
            value = int(coeff) % p
            if value:
                canonical[exponents] = value
        self.terms = canonical

    @classmethod
    def zero(cls, p: int, arity: int) -> "Poly":
        return cls(p, arity)

    @classmethod
    def constant(cls, value: Scalar, p: int, arity: int) -> "Poly":
        return cls(p, arity, {(0,) * arity: int(value)})

    @classmethod
    def variable(cls, index: int, p: int, arity: int) -> "Poly":
        """0 始まりのスロット index の変数"""
        if not 0 <= index < arity:
            raise IndexError(f"変数スロット {index} は範囲外です (arity={arity})")
        exponents = tuple(1 if k == index else 0 for k in range(arity))
        return cls(p, arity, {exponents: 1})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: Scalar, p: int) -> "Poly":
        exponents = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exponents):
            raise DomainError(f"負の指数は使えません: {exponents}")
        return cls(p, len(exponents), {exponents: int(coeff)})

    @classmethod
    def from_terms(cls, p: int, arity: int, terms: Iterable[Tuple[Sequence[int], Scalar]]) -> "Poly":
        """同じ単項式の係数は足し合わせる"""
        acc: Dict[Exponents, int] = {}
        for exponents, coeff in terms:
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != arity:
                raise ArityMismatch(f"指数ベクトルの長さ {len(exponents)} が arity={arity} と一致しません")
            if any(e < 0 for e in exponents):
                raise DomainError(f"負の指数は使えません: {exponents}")
            acc[exponents] = acc.get(exponents, 0) + int(coeff)
        return cls(p, arity, acc)

    def _check(self, other: "Poly"):
        if other.p != self.p:
            raise ModulusMismatch(f"法が一致しません: {self.p} と {other.p}")
        if other.arity != self.arity:
            raise ArityMismatch(f"arity が一致しません: {self.arity} と {other.arity}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Exponents, int]]:
        return iter(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.arity == other.arity and self.terms == other.terms
        if isinstance(other, FpScalar):
            return other.modulus == self.p and self == other.value
        if isinstance(other, int):
            return self._constant_value() == other
        return NotImplemented

    def _constant_value(self) -> Optional[int]:
        origin = (0,) * self.arity
        if set(self.terms) <= {origin}:
            return self.terms.get(origin, 0)
        return None

    def __hash__(self):
        # 定数は代表元の整数と同じ hash
        constant = self._constant_value()
        if constant is not None:
            return hash(constant)
        return hash((self.p, self.arity, frozenset(self.terms.items())))

    def __add__(self, other: Union["Poly", Scalar]) -> "Poly":
        if isinstance(other, (int, FpScalar)):
            other = Poly.constant(other, self.p, self.arity)
        self._check(other)
        acc = dict(self.terms)
        for exponents, coeff in other.terms.items():
            acc[exponents] = acc.get(exponents, 0) + coeff
        return Poly(self.p, self.arity, acc)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.p, self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Union["Poly", Scalar]) -> "Poly":
        if isinstance(other, (int, FpScalar)):
            other = Poly.constant(other, self.p, self.arity)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Poly":
        return (-self) + other

    def scale(self, c: Scalar) -> "Poly":
        c = int(c) % self.p
        if c == 0:
            return Poly.zero(self.p, self.arity)
        return Poly(self.p, self.arity, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if isinstance(other, (int, FpScalar)):
            return self.scale(other)
        self._check(other)
        acc: Dict[Exponents, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(map(operator.add, ea, eb))
                acc[key] = acc.get(key, 0) + ca * cb
        return Poly(self.p, self.arity, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise DomainError("多項式の負冪は扱いません")
        result = Poly.constant(1, self.p, self.arity)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def coefficient(self, exponents: Sequence[int]) -> FpScalar:
        return FpScalar(self.terms.get(tuple(exponents), 0), self.p)

    def support(self) -> Set[Exponents]:
        return set(self.terms)

    def total_degree(self) -> int:
        """最大全次数（零多項式は -1）"""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(e[index] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_frobenius(self) -> bool:
        """全ての指数が p で割り切れるか（F_p[z^p] の元か）"""
        return all(all(x % self.p == 0 for x in e) for e in self.terms)

    def evaluate(self, point: Sequence[Scalar]) -> FpScalar:
        if len(point) != self.arity:
            raise ArityMismatch(f"評価点の次元 {len(point)} が arity={self.arity} と一致しません")
        values = [int(v) % self.p for v in point]
        total = 0
        for exponents, coeff in self.terms.items():
            term = coeff
            for value, e in zip(values, exponents):
                if e:
                    term = term * pow(value, e, self.p) % self.p
            total += term
        return FpScalar(total, self.p)

    def sorted_terms(self, sigma: Optional[Sequence[int]] = None) -> List[Tuple[Exponents, int]]:
        """σ-辞書式の降順に並べた項のリスト"""
        sigma = sigma or identity_sigma(self.arity)
        return sorted(self.terms.items(), key=lambda item: lex_key(item[0], sigma), reverse=True)

    def add_slot(self) -> "Poly":
        """末尾に変数スロットを追加（指数 0）"""
        return Poly(self.p, self.arity + 1, {e + (0,): c for e, c in self.terms.items()})

    def drop_slot(self) -> "Poly":
        """
        末尾の変数スロットを取り除く

        Raises:
            DomainError: 末尾の変数を含む項がある
        """
        if self.arity == 0:
            raise DomainError("取り除くスロットがありません")
        if any(e[-1] for e in self.terms):
            raise DomainError("末尾の変数を含む項があります")
        return Poly(self.p, self.arity - 1, {e[:-1]: c for e, c in self.terms.items()})

    def shift(self, exponents: Sequence[int]) -> "Poly":
        """単項式 z^exponents を掛ける"""
        shift = tuple(exponents)
        if len(shift) != self.arity:
            raise ArityMismatch("シフトの長さが arity と一致しません")
        return Poly(self.p, self.arity, {tuple(map(operator.add, e, shift)): c for e, c in self.terms.items()})

    def leading_term(self, sigma: Optional[Sequence[int]] = None) -> LeadingTerm:
        return leading_term(self, sigma)

    def to_text(self, names: Optional[Sequence[str]] = None) -> str:
        return poly_to_text(self, names)

    def to_dict(self) -> dict:
        """正準 JSON 形式（項は id-辞書式降順）"""
        return {
            "p": self.p,
            "arity": self.arity,
            "terms": [{"exp": list(e), "coeff": c} for e, c in self.sorted_terms()],
        }

    def __repr__(self):
        return f"Poly({self.to_text()}, p={self.p})"


class VecPoly:
    """座標ごとに Poly を持つ多項式ベクトル（KZ 系の解の担体）"""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[Poly]):
        coords = tuple(coords)
        if not coords:
            raise DomainError("VecPoly は少なくとも 1 座標を持つ必要があります")
        for c in coords[1:]:
            coords[0]._check(c)
        self.coords = coords

    @classmethod
    def zero(cls, p: int, arity: int, n: int) -> "VecPoly":
        return cls([Poly.zero(p, arity) for _ in range(n)])

    @classmethod
    def from_monomial_map(cls, p: int, arity: int, n: int,
                          mapping: Dict[Exponents, Sequence[int]]) -> "VecPoly":
        """単項式 -> 係数ベクトルの辞書から構築"""
        coords: List[Dict[Exponents, int]] = [{} for _ in range(n)]
        for exponents, vector in mapping.items():
            for index, value in enumerate(vector):
                if value:
                    coords[index][exponents] = value
        return cls([Poly(p, arity, c) for c in coords])

    @classmethod
    def constant_vector(cls, vector: Sequence[Scalar], poly: Poly) -> "VecPoly":
        """スカラーベクトル × 多項式"""
        return cls([poly.scale(v) for v in vector])

    @property
    def p(self) -> int:
        return self.coords[0].p

    @property
    def arity(self) -> int:
        return self.coords[0].arity

    @property
    def n(self) -> int:
        return len(self.coords)

    def __getitem__(self, index: int) -> Poly:
        return self.coords[index]

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def _check(self, other: "VecPoly"):
        if other.n != self.n:
            raise ArityMismatch(f"座標数が一致しません: {self.n} と {other.n}")
        self.coords[0]._check(other.coords[0])

    def __eq__(self, other):
        if not isinstance(other, VecPoly):
            return NotImplemented
        return self.n == other.n and all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other: "VecPoly") -> "VecPoly":
        self._check(other)
        return VecPoly([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "VecPoly") -> "VecPoly":
        self._check(other)
        return VecPoly([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "VecPoly":
        return VecPoly([-a for a in self.coords])

    def scale(self, c: Union[Poly, Scalar]) -> "VecPoly":
        """スカラーまたは多項式倍"""
        if isinstance(c, Poly):
            return VecPoly([c * a for a in self.coords])
        return VecPoly([a.scale(c) for a in self.coords])

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def support(self) -> Set[Exponents]:
        result: Set[Exponents] = set()
        for a in self.coords:
            result |= a.support()
        return result

    def coefficient_vector(self, exponents: Sequence[int]) -> Tuple[int, ...]:
        exponents = tuple(exponents)
        return tuple(a.terms.get(exponents, 0) for a in self.coords)

    def monomial_map(self) -> Dict[Exponents, Tuple[int, ...]]:
        return {e: self.coefficient_vector(e) for e in self.support()}

    def total_degree(self) -> int:
        return max(a.total_degree() for a in self.coords)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.support()}) <= 1

    def evaluate(self, point: Sequence[Scalar]) -> Tuple[FpScalar, ...]:
        return tuple(a.evaluate(point) for a in self.coords)

    def shift(self, exponents: Sequence[int]) -> "VecPoly":
        return VecPoly([a.shift(exponents) for a in self.coords])

    def leading_term(self, sigma: Optional[Sequence[int]] = None) -> LeadingTerm:
        return leading_term(self, sigma)

    def to_text(self, names: Optional[Sequence[str]] = None) -> str:
        return "(" + ", ".join(poly_to_text(a, names) for a in self.coords) + ")"

    def to_dict(self) -> dict:
        return {"p": self.p, "arity": self.arity, "coords": [a.to_dict() for a in self.coords]}

    def __repr__(self):
        return f"VecPoly{self.to_text()}"


def pow_binomial(x_slot: int, z_slot: int, exponent: int, p: int, arity: int) -> Poly:
    """
    二項定理による (x - z)^exponent の展開

    Args:
        x_slot: x のスロット（0 始まり）
        z_slot: z のスロット（0 始まり）
        exponent: 冪指数
        p: 法
        arity: 変数の個数

    Returns:
        Poly: 係数が mod p で消える項は含まない
    """
    if exponent < 0:
        raise DomainError("負冪は扱いません")
    terms: Dict[Exponents, int] = {}
    for k in range(exponent + 1):
        coeff = binom_mod_p(exponent, k, p).value
        if not coeff:
            continue
        exponents = [0] * arity
        exponents[x_slot] += exponent - k
        exponents[z_slot] += k
        terms[tuple(exponents)] = coeff if k % 2 == 0 else -coeff
    return Poly(p, arity, terms)


def _falling_factorial(e: int, order: int, p: int) -> int:
    value = 1
    for t in range(order):
        value = value * (e - t) % p
        if not value:
            return 0
    return value


def partial_derivative(f: Union[Poly, VecPoly], index: int, order: int = 1) -> Union[Poly, VecPoly]:
    """
    z_{index+1} に関する order 階の形式的偏微分

    Args:
        f: Poly または VecPoly
        index: 0 始まりの変数スロット
        order: 微分の階数（0 以上）

    Returns:
        f と同じ型の導関数
    """
    if order < 0:
        raise DomainError(f"微分の階数は非負である必要があります: {order}")
    if isinstance(f, VecPoly):
        return VecPoly([partial_derivative(a, index, order) for a in f.coords])
    if order == 0:
        return f
    terms: Dict[Exponents, int] = {}
    for exponents, coeff in f.terms.items():
        e = exponents[index]
        if e < order:
            continue
        factor = _falling_factorial(e, order, f.p)
        if not factor:
            continue
        lowered = exponents[:index] + (e - order,) + exponents[index + 1:]
        terms[lowered] = coeff * factor
    return Poly(f.p, f.arity, terms)


def extract_x_coeff(f: Union[Poly, VecPoly], k: int, slot: int = -1) -> Union[Poly, VecPoly]:
    """
    補助変数 x（既定では末尾スロット）の x^k の係数を取り出す

    Returns:
        x スロットを除いた多項式
    """
    if isinstance(f, VecPoly):
        return VecPoly([extract_x_coeff(a, k, slot) for a in f.coords])
    slot = slot % f.arity
    terms: Dict[Exponents, int] = {}
    for exponents, coeff in f.terms.items():
        if exponents[slot] == k:
            terms[exponents[:slot] + exponents[slot + 1:]] = coeff
    return Poly(f.p, f.arity - 1, terms)


def leading_term(f: Union[Poly, VecPoly], sigma: Optional[Sequence[int]] = None) -> LeadingTerm:
    """
    σ-辞書式順序で最大の単項式とその係数

    Args:
        f: 0 でない Poly または VecPoly
        sigma: 変数の置換（1 始まり、既定は恒等置換）

    Returns:
        LeadingTerm: VecPoly では係数は座標ごとの係数ベクトル

    Raises:
        ZeroPolynomial: f = 0 の場合
    """
    if sigma is None:
        sigma = identity_sigma(f.arity)
    sigma = validate_sigma(sigma, f.arity)
    support = f.support()
    if not support:
        raise ZeroPolynomial("零多項式には先頭項がありません")
    top = max(support, key=lambda e: lex_key(e, sigma))
    if isinstance(f, VecPoly):
        coeff: Union[int, Tuple[int, ...]] = f.coefficient_vector(top)
    else:
        coeff = f.terms[top]
    return LeadingTerm(coeff=coeff, exponents=top, sigma=sigma, modulus=f.p)


def default_names(arity: int) -> List[str]:
    return [f"z{k}" for k in range(1, arity + 1)]


def poly_to_text(f: Poly, names: Optional[Sequence[str]] = None) -> str:
    """
    人間可読な表記（id-辞書式降順、係数は最小非負剰余）

    例: 4*z1 + z2、z1^2*z2
    """
    names = list(names) if names else default_names(f.arity)
    if f.is_zero():
        return "0"
    parts = []
    for exponents, coeff in f.sorted_terms():
        factors = []
        for name, e in zip(names, exponents):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{coeff}*" + "*".join(factors))
    return " + ".join(parts)


def linear_form(p: int, arity: int, coefficients: Dict[int, int]) -> Poly:
    """Σ c_k z_k（スロット -> 係数）"""
    terms: Dict[Exponents, int] = {}
    for index, c in coefficients.items():
        exponents = tuple(1 if k == index else 0 for k in range(arity))
        terms[exponents] = terms.get(exponents, 0) + c
    return Poly(p, arity, terms)


def difference(i: int, j: int, p: int, arity: int) -> Poly:
    """z_{i+1} - z_{j+1}（0 始まりのスロット）"""
    return linear_form(p, arity, {i: 1, j: -1})


def divide_by_difference(f: Poly, i: int, j: int) -> Tuple[Poly, bool]:
    """
    f を (z_i - z_j) で割る（0 始まりのスロット、z_i について組立除法）

    Returns:
        (商, 余りが 0 か)
    """
    p, arity = f.p, f.arity
    by_power: Dict[int, Dict[Exponents, int]] = {}
    for exponents, coeff in f.terms.items():
        rest = exponents[:i] + (0,) + exponents[i + 1:]
        by_power.setdefault(exponents[i], {})[rest] = coeff
    if not by_power:
        return Poly.zero(p, arity), True
    top = max(by_power)
    zj = Poly.variable(j, p, arity)
    quotient = Poly.zero(p, arity)
    carry = Poly.zero(p, arity)
    for k in range(top, 0, -1):
        carry = Poly(p, arity, by_power.get(k, {})) + zj * carry
        unit = [0] * arity
        unit[i] = k - 1
        quotient = quotient + carry.shift(unit)
    remainder = Poly(p, arity, by_power.get(0, {})) + zj * carry
    return quotient, remainder.is_zero()
