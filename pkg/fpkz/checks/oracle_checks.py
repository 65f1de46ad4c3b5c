"""
オラクルによる交差検証
全ての斉次解が超幾何解の加群に属すること、先頭項の連立系、次数の合同式
"""

from typing import Any, Dict, Iterator, List, Tuple

from ..analysis import degree_congruence_check, leading_eigen_check, leading_system_check
from ..kz_core import KzInstance, new_instance
from ..mpoly import Poly, VecPoly, difference, leading_term
from ..oracle import (
    admissible_solutions,
    leading_echelon,
    module_span,
    reduce_to_hypergeometric,
    same_span,
    solve_homogeneous,
    uniqueness_check,
)
from ..sweep import ample_sweep
from .base import BaseCheck, CaseCounter

TWO_POINT_EXAMPLE = (3, 2, (1, 1))


def two_point_solution() -> VecPoly:
    """(z_1 - z_2)^2 (1, -1)（p = 3）"""
    base = difference(0, 1, 3, 2) ** 2
    return VecPoly.constant_vector((1, -1), base)


def oracle_bases(config, counter: CaseCounter) -> Iterator[Tuple[KzInstance, int, List[VecPoly]]]:
    """ample なインスタンスと ΣM に合同な次数 d <= ΣM + extra_periods p ごとの解空間の基底"""
    sweep = config.sweep
    for inst in ample_sweep(sweep, sweep.oracle_max_prime, sweep.oracle_max_n):
        cap = inst.M_total + sweep.extra_periods * inst.p
        for d in range(inst.M_total % inst.p, cap + 1, inst.p):
            yield inst, d, solve_homogeneous(inst, d, config.max_unknowns)
        # 合同でない次数では解は 0 のみ
        for d in range(cap + 1):
            if (d - inst.M_total) % inst.p:
                counter.check(not solve_homogeneous(inst, d, config.max_unknowns), f"{inst.label()} d={d}: 次数の制約")


class OracleModuleCheck(BaseCheck):
    """二点の例と、ample なインスタンスの全ての解の加群への簡約・一意性・admissibility"""

    criterion = 7

    @property
    def name(self) -> str:
        return "oracle_module"

    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        inst = new_instance(*TWO_POINT_EXAMPLE)
        example = two_point_solution()
        basis = solve_homogeneous(inst, 2, self.config.max_unknowns)
        counter.check(len(basis) == 1 and same_span(basis, [example]), "二点の例: 2 次の解空間")
        counter.check(not solve_homogeneous(inst, 1, self.config.max_unknowns), "二点の例: 1 次の解空間")
        counter.check(inst.r == 0 and not reduce_to_hypergeometric(inst, example).reducible, "二点の例: 簡約")

        dimensions = {}
        for inst, d, basis in oracle_bases(self.config, counter):
            dimensions[f"{inst.label()} d={d}"] = len(basis)
            for b in basis:
                cert = reduce_to_hypergeometric(inst, b)
                ok = cert.reducible and all(c.is_frobenius() for _, c in cert.terms) and cert.combine() == b
                counter.check(ok, f"{inst.label()} d={d}: 加群に属さない解")
            module = module_span(inst, d)
            counter.check(same_span(basis, module), f"{inst.label()} d={d}: 解空間 ≠ 加群")
            counter.check(same_span(admissible_solutions(inst, d, basis=basis), module),
                          f"{inst.label()} d={d}: L-admissible な解 ≠ 加群")
            for l in range(1, inst.r + 1):
                if inst.delta(l) == d:
                    counter.check(uniqueness_check(inst, l, basis=basis), f"{inst.label()} l={l}: 一意性")
        return {"dimensions": dimensions}


class LeadingSystemCheck(BaseCheck):
    """オラクルの全ての基底ベクトルの id-先頭項が連立系を満たし、次数が ΣM に合同"""

    criterion = 8

    @property
    def name(self) -> str:
        return "leading_system"

    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        inst = new_instance(*TWO_POINT_EXAMPLE)
        counter.check(leading_system_check(inst, (1, -1), (2, 0)), "二点の例: 先頭項の連立系")
        counter.check(degree_congruence_check(inst, two_point_solution()), "二点の例: 次数の合同式")

        vectors = 0
        for inst, d, basis in oracle_bases(self.config, counter):
            for b in leading_echelon(basis):
                vectors += 1
                lt = leading_term(b)
                C, exps = lt.coeff_vector(), lt.exponents
                counter.check(leading_system_check(inst, C, exps), f"{inst.label()} d={d}: {C} z^{exps}")
                counter.check(leading_eigen_check(inst, C, exps), f"{inst.label()} d={d}: 固有値系 {C}")
                counter.check(degree_congruence_check(inst, b), f"{inst.label()} d={d}: 次数の合同式")
        return {"vectors": vectors}
