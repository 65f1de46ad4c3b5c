"""
先頭項の検査
6 変数の計算例の再現と、インスタンス掃引での σ-先頭項の予測
"""

from typing import Any, Dict

from ..analysis import i_sequence_check, leading_prediction, prediction_matches, prediction_sign_offset
from ..construct import all_hypergeometric_solutions, leading_coefficients_independent
from ..kz_core import new_instance
from ..mpoly import leading_term
from ..sweep import WORKED_EXAMPLE, WORKED_SIGMAS, sample_sigmas, solution_sweep
from .base import BaseCheck, CaseCounter

# (l, σ) -> (係数ベクトル, 単項式, 印刷されたスカラー)
WORKED_LEADING_TERMS = {
    (1, WORKED_SIGMAS[0]): ((0, 0, 12, 5, 5, 5), (8, 8, 7, 0, 0, 0), 5),
    (1, WORKED_SIGMAS[1]): ((0, 0, 4, 0, 9, 9), (8, 8, 3, 4, 0, 0), 9),
    (1, WORKED_SIGMAS[2]): ((9, 4, 0, 0, 0, 0), (0, 3, 8, 4, 4, 4), 9),
    (2, WORKED_SIGMAS[0]): ((0, 8, 2, 2, 2, 2), (8, 2, 0, 0, 0, 0), 2),
    (2, WORKED_SIGMAS[1]): ((0, 8, 2, 2, 2, 2), (8, 2, 0, 0, 0, 0), 2),
    (2, WORKED_SIGMAS[2]): ((6, 6, 6, 3, 0, 0), (0, 0, 0, 2, 4, 4), 6),
}
WORKED_DEGREES = {1: 23, 2: 10}


class WorkedExampleCheck(BaseCheck):
    """(13, 3, (2,2,2,1,1,1)) の 6 つの σ-先頭項と次数"""

    criterion = 1

    @property
    def name(self) -> str:
        return "worked_example"

    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        inst = new_instance(*WORKED_EXAMPLE)
        solutions = {s.l: s for s in all_hypergeometric_solutions(inst)}
        counter.check(inst.M == (8, 8, 8, 4, 4, 4) and inst.r == 2, f"M={inst.M}, r={inst.r}")
        for l, degree in WORKED_DEGREES.items():
            counter.check(solutions[l].degree == degree and solutions[l].poly.total_degree() == degree,
                          f"l={l}: 次数 {solutions[l].degree} ≠ {degree}")

        observed = {}
        for (l, sigma), (vector, exponents, printed) in WORKED_LEADING_TERMS.items():
            actual = leading_term(solutions[l].poly, sigma)
            observed[f"l={l} σ={sigma}"] = {"coeff": list(actual.coeff_vector()), "exp": list(actual.exponents)}
            counter.check(actual.coeff_vector() == vector and actual.exponents == exponents,
                          f"l={l} σ={sigma}: {actual.coeff_vector()} z^{actual.exponents}")
            # 末尾の座標は印刷された係数そのもの
            counter.check(vector[sigma[-1] - 1] == printed, f"l={l} σ={sigma}: 印刷された係数 {printed}")
            counter.check(prediction_matches(inst, l, sigma, solutions[l].poly), f"l={l} σ={sigma}: 予測と不一致")
        return {"instance": inst.label(), "leading_terms": observed}


class LeadingTermSweepCheck(BaseCheck):
    """掃引の全インスタンスで σ-先頭項が予測と一致し、i(l) 列が狭義減少する"""

    @property
    def name(self) -> str:
        return "leading_sweep"

    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        offsets = set()
        for inst in solution_sweep(self.config.sweep):
            counter.check(i_sequence_check(inst), f"{inst.label()}: i(l) 列")
            solutions = all_hypergeometric_solutions(inst)
            for sigma in sample_sigmas(inst.n):
                for s in solutions:
                    counter.check(prediction_matches(inst, s.l, sigma, s.poly), f"{inst.label()} l={s.l} σ={sigma}")
                    offsets.add(prediction_sign_offset(inst, s.l, sigma))
                counter.check(leading_coefficients_independent(inst, sigma), f"{inst.label()} σ={sigma}: 一次従属")
        counter.check(len(offsets) == 1 and None not in offsets, f"ガンマ表示の符号ずれが一定でない: {offsets}")
        return {"gamma_form_sign_offsets": sorted(offsets, key=repr)}
