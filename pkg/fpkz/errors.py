"""
例外定義モジュール
fpkz 全体で使用する例外クラスの階層
"""


class FpkzError(Exception):
    """fpkz の全例外の基底クラス"""


class ZeroInverse(FpkzError, ZeroDivisionError):
    """F_p で 0 の逆元を求めた"""


class DomainError(FpkzError, ValueError):
    """関数の定義域外の引数"""


class ArityMismatch(FpkzError, ValueError):
    """多項式の変数の個数が一致しない"""


class ModulusMismatch(FpkzError, ValueError):
    """法 p が一致しない"""


class ZeroPolynomial(FpkzError, ValueError):
    """零多項式の先頭項を要求した"""


class InvalidInstance(FpkzError, ValueError):
    """(p, q, m) が KZ 系のデータとして不正"""


class PreconditionError(FpkzError, ValueError):
    """操作の前提条件（ample 性など）が満たされない"""


class CycleOutOfRange(FpkzError, ValueError):
    """サイクル番号 l が 1..r の範囲外"""


class NotSingular(FpkzError, ValueError):
    """ベクトルが Sing V[-2] に属さない"""


class NotASolution(FpkzError, ValueError):
    """入力が KZ 系の解ではない"""


class ResourceLimit(FpkzError):
    """未知数の個数が設定上限を超えた"""


class SchemaError(FpkzError, ValueError):
    """JSON の構文エラーまたはスキーマ検証エラー"""

    def __init__(self, message: str, location: str = ""):
        super().__init__(message)
        self.location = location


__all__ = [
    "FpkzError",
    "ZeroInverse",
    "DomainError",
    "ArityMismatch",
    "ModulusMismatch",
    "ZeroPolynomial",
    "InvalidInstance",
    "PreconditionError",
    "CycleOutOfRange",
    "NotSingular",
    "NotASolution",
    "ResourceLimit",
    "SchemaError",
]
