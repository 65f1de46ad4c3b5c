"""
fpkz
有限体 F_p 上の KZ 方程式の多項式解を構成・検証するライブラリ
"""

__version__ = "0.1.0"

from .errors import FpkzError
from .kz_core import KzInstance, new_instance, verify_kz_solution
from .construct import hypergeometric_solution, all_hypergeometric_solutions
from .analysis import leading_prediction, verify_determinant
from .oracle import solve_homogeneous, reduce_to_hypergeometric
from .orchestrator import CheckOrchestrator
from .aggregator import ResultAggregator
from .time_tracker import TimeTracker
from .output_manager import OutputManager

__all__ = [
    "FpkzError",
    "KzInstance",
    "new_instance",
    "verify_kz_solution",
    "hypergeometric_solution",
    "all_hypergeometric_solutions",
    "leading_prediction",
    "verify_determinant",
    "solve_homogeneous",
    "reduce_to_hypergeometric",
    "CheckOrchestrator",
    "ResultAggregator",
    "TimeTracker",
    "OutputManager",
]
