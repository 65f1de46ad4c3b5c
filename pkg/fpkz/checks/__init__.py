"""
受け入れ検査モジュール
"""

from typing import List

from ..config import Config
from .base import BaseCheck, CaseCounter, CheckResult
from .determinant import DeterminantCheck, InitialValueCheck
from .gamma import BetaIntegralCheck, GammaIdentityCheck
from .leading import LeadingTermSweepCheck, WorkedExampleCheck
from .oracle_checks import LeadingSystemCheck, OracleModuleCheck
from .sl2 import Sl2IdentificationCheck
from .solutions import CoefficientFormulaCheck, KzSolutionCheck


def default_checks(config: Config) -> List[BaseCheck]:
    """受け入れ検査の一覧（基準番号順）"""
    return [
        WorkedExampleCheck(config),
        KzSolutionCheck(config),
        CoefficientFormulaCheck(config),
        BetaIntegralCheck(config),
        GammaIdentityCheck(config),
        DeterminantCheck(config),
        OracleModuleCheck(config),
        LeadingSystemCheck(config),
        Sl2IdentificationCheck(config),
        InitialValueCheck(config),
        LeadingTermSweepCheck(config),
    ]


__all__ = [
    "BaseCheck",
    "CaseCounter",
    "CheckResult",
    "default_checks",
    "BetaIntegralCheck",
    "CoefficientFormulaCheck",
    "DeterminantCheck",
    "GammaIdentityCheck",
    "InitialValueCheck",
    "KzSolutionCheck",
    "LeadingSystemCheck",
    "LeadingTermSweepCheck",
    "OracleModuleCheck",
    "Sl2IdentificationCheck",
    "WorkedExampleCheck",
]
