"""
sl2 による Ω_ij の同定の検査
"""

from typing import Any, Dict

import numpy as np

from ..kz_core import M_WEIGHTED, STANDARD, omega
from ..sl2_model import casimir_matrix, preserves_sing, trace_on_sing
from ..sweep import all_sweep
from .base import BaseCheck, CaseCounter


class Sl2IdentificationCheck(BaseCheck):
    """Ω_ij が V[-2] 上の Casimir 作用素と一致し、Sing V[-2] 上の Ω^M_ij のトレースが M_i + M_j"""

    criterion = 9

    @property
    def name(self) -> str:
        return "sl2_identification"

    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        instances = 0
        for inst in all_sweep(self.config.sweep):
            instances += 1
            for i in range(1, inst.n + 1):
                for j in range(i + 1, inst.n + 1):
                    label = f"{inst.label()} ({i},{j})"
                    counter.check(np.array_equal(casimir_matrix(inst, i, j), omega(inst, i, j, STANDARD)),
                                  f"{label}: Casimir")
                    counter.check(preserves_sing(inst, omega(inst, i, j, M_WEIGHTED)), f"{label}: Sing を保たない")
                    counter.check(trace_on_sing(inst, i, j) == (inst.M[i - 1] + inst.M[j - 1]) % inst.p,
                                  f"{label}: トレース")
        return {"instances": instances}
