"""
行列式と初期値問題の検査
"""

from typing import Any, Dict, List

from ..analysis import initial_value_sweep, verify_determinant
from ..kz_core import KzInstance, new_instance
from ..sweep import ample_sweep
from .base import BaseCheck, CaseCounter

# 掃引の範囲に入っていれば必ず含めるインスタンス
REQUIRED_DET_INSTANCES = ((5, 3, (1, 1)), (19, 5, (1, 1, 1)))


def det_instances(config) -> List[KzInstance]:
    sweep = config.sweep
    found = ample_sweep(sweep, sweep.det_max_prime, sweep.det_max_n)
    labels = {inst.triple for inst in found}
    for p, q, m in REQUIRED_DET_INSTANCES:
        if p <= sweep.det_max_prime and len(m) <= sweep.det_max_n and (p, q, m) not in labels:
            found.append(new_instance(p, q, m))
    return found


class DeterminantCheck(BaseCheck):
    """det c(z) が閉公式と一致し、常微分方程式・次数・先頭単項式・可除性を満たす"""

    criterion = 6

    @property
    def name(self) -> str:
        return "determinant"

    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        offsets: Dict[int, set] = {}
        for inst in det_instances(self.config):
            report = verify_determinant(inst)
            flags = {k: getattr(report, k) for k in ("equal", "ode_ok", "degree_ok", "leading_monomial_ok", "divisible")}
            counter.check(report.passed, f"{inst.label()}: {flags}")
            offsets.setdefault(inst.n, set()).add(report.gamma_form_sign_offset)
        for n, values in offsets.items():
            counter.check(len(values) == 1 and None not in values, f"n={n}: ガンマ表示の符号ずれが一定でない {values}")
        return {"gamma_form_sign_offsets": {n: sorted(v, key=repr) for n, v in offsets.items()}}


class InitialValueCheck(BaseCheck):
    """相異なる座標の全ての点で c(x) が可逆"""

    criterion = 10

    @property
    def name(self) -> str:
        return "initial_value"

    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        points = 0
        for inst in ample_sweep(self.config.sweep, self.config.sweep.initial_value_max_prime):
            result = initial_value_sweep(inst)
            points += result.points
            counter.check(result.passed, f"{inst.label()}: 特異な点 {result.singular_points[:5]}")
        return {"points": points}
