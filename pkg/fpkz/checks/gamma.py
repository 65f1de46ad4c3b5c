"""
ガンマ関数とベータ積分の検査
"""

from typing import Any, Dict

from ..construct import beta_sign_offset, fp_integral
from ..fp_arith import beta_fp, gamma_sign_audit
from ..kz_core import new_instance
from ..mpoly import Poly
from ..sweep import odd_primes_up_to
from .base import BaseCheck, CaseCounter


def beta_by_extraction(a: int, b: int, p: int) -> int:
    """x^a (1-x)^b の x^{p-1} の係数"""
    x = Poly.variable(0, p, 1)
    return fp_integral(x ** a * (1 - x) ** b, 1, p).coefficient(()).value


class BetaIntegralCheck(BaseCheck):
    """全ての有効な (a, b) で beta_fp が係数抽出と一致する"""

    criterion = 4

    @property
    def name(self) -> str:
        return "beta_integral"

    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        primes = odd_primes_up_to(self.config.sweep.gamma_max_prime)
        for p in primes:
            for a in range(1, p):
                for b in range(max(1, p - 1 - a), p):
                    counter.check(beta_fp(a, b, p) == beta_by_extraction(a, b, p), f"p={p} a={a} b={b}")
        return {"primes": primes}


class GammaIdentityCheck(BaseCheck):
    """Wilson、反転公式、周期性と、ガンマ表示の符号ずれの一貫性"""

    criterion = 5

    @property
    def name(self) -> str:
        return "gamma_identities"

    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        offsets = {}
        for p in odd_primes_up_to(self.config.sweep.gamma_max_prime):
            audit = gamma_sign_audit(p)
            counter.check(audit.wilson, f"p={p}: Wilson")
            counter.check(audit.reflection, f"p={p}: 反転公式")
            counter.check(audit.periodicity, f"p={p}: 周期性")
            counter.check(audit.consistent, f"p={p}: 符号ずれが一定でない {audit.lemma_offsets}")
            offsets[p] = {
                "lemma": sorted(audit.lemma_offsets, key=repr),
                "reflection_literal_at_zero": audit.reflection_literal_at_zero,
            }
        # n = 2 の閉じた形のガンマ表示
        beta_offsets = set()
        for p, q, m in ((5, 3, (1, 1)), (7, 5, (1, 3)), (7, 5, (3, 4)), (7, 3, (2, 2))):
            inst = new_instance(p, q, m)
            if inst.ample:
                beta_offsets.add(beta_sign_offset(inst))
        counter.check(len(beta_offsets) == 1 and None not in beta_offsets, f"n=2 の符号ずれ {beta_offsets}")
        return {"offsets": offsets, "beta_offsets": sorted(beta_offsets, key=repr)}
