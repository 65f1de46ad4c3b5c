"""
検査の基底クラス
"""

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional

from ..config import Config

# 失敗の記録は多すぎると読めないので打ち切る
MAX_RECORDED_FAILURES = 50


@dataclass
class CheckResult:
    """受け入れ検査一つ分の結果を表すデータクラス"""
    name: str
    criterion: Optional[int]
    passed: bool
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None
    duration_seconds: Optional[float] = None
    timestamp: str = ""

    def __post_init__(self):
        if not self.timestamp:
            self.timestamp = datetime.now().isoformat()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "criterion": self.criterion,
            "passed": self.passed,
            "cases": self.cases,
            "failures": list(self.failures),
            "details": self.details,
            "error": self.error,
            "duration_seconds": self.duration_seconds,
            "timestamp": self.timestamp,
        }


class CaseCounter:
    """検査ケースの件数と失敗を数える"""

    def __init__(self):
        self.cases = 0
        self.failure_count = 0
        self.failures: List[str] = []

    def check(self, ok: bool, description: str) -> bool:
        self.cases += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_RECORDED_FAILURES:
                self.failures.append(description)
        return ok


class BaseCheck(ABC):
    """受け入れ検査の抽象基底クラス"""

    criterion: Optional[int] = None

    def __init__(self, config: Config):
        self.config = config

    @property
    @abstractmethod
    def name(self) -> str:
        """検査名を返す"""
        pass

    @abstractmethod
    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        """
        検査本体

        Args:
            counter: ケースごとの成否を記録するカウンター

        Returns:
            Dict[str, Any]: 結果の詳細
        """
        pass

    def run(self) -> CheckResult:
        """検査を実行して時間を計測（例外は呼び出し側で扱う）"""
        counter = CaseCounter()
        start = time.perf_counter()
        details = self.execute(counter)
        elapsed = time.perf_counter() - start
        if counter.failure_count > len(counter.failures):
            details["unrecorded_failures"] = counter.failure_count - len(counter.failures)
        return CheckResult(
            name=self.name,
            criterion=self.criterion,
            passed=counter.failure_count == 0 and counter.cases > 0,
            cases=counter.cases,
            failures=counter.failures,
            details=details,
            duration_seconds=elapsed,
        )
