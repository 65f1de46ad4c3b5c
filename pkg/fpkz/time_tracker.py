"""
時間計測モジュール
各検査の所要時間を記録し、実行時間の目安と比較する
"""

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, List, Optional

# 検査名 -> 実行時間の目安（秒）。超過しても警告のみ
RUNTIME_BUDGETS: Dict[str, float] = {
    "worked_example": 5.0,
    "kz_solutions": 240.0,
    "determinant": 120.0,
}


def format_duration(seconds: float) -> str:
    """秒数を「12.34秒」「1.50分」「2.00時間」の形に整形"""
    for unit, scale in (("時間", 3600.0), ("分", 60.0)):
        if seconds >= scale:
            return f"{seconds / scale:.2f}{unit}"
    return f"{seconds:.2f}秒"


@dataclass
class TaskTiming:
    """一つの検査の計測結果"""
    name: str
    seconds: float
    budget: Optional[float] = None
    timestamp: str = field(default_factory=lambda: datetime.now().isoformat())

    @property
    def over_budget(self) -> bool:
        return self.budget is not None and self.seconds > self.budget

    def to_dict(self) -> Dict:
        return {"name": self.name, "duration": format_duration(self.seconds), "duration_seconds": self.seconds}


class TimeTracker:
    """検査ごとの所要時間を記録し、目安との比較を行う"""

    def __init__(self, budgets: Optional[Dict[str, float]] = None):
        """
        初期化

        Args:
            budgets: 検査名 -> 目安（秒）。省略時は RUNTIME_BUDGETS
        """
        self.budgets = dict(RUNTIME_BUDGETS if budgets is None else budgets)
        self.timings: List[TaskTiming] = []
        self._created = time.perf_counter()

    def elapsed(self) -> float:
        """トラッカー作成からの経過秒数"""
        return time.perf_counter() - self._created

    def record(self, name: str, seconds: float) -> TaskTiming:
        """計測済みの時間を記録（ワーカープロセスで測った時間など）"""
        timing = TaskTiming(name=name, seconds=seconds, budget=self.budgets.get(name))
        self.timings.append(timing)
        return timing

    @contextmanager
    def measure(self, name: str):
        """with ブロックの所要時間を記録"""
        start = time.perf_counter()
        try:
            yield
        finally:
            self.record(name, time.perf_counter() - start)

    def over_budget(self) -> List[Dict]:
        return [
            {"name": t.name, "seconds": t.seconds, "budget": t.budget}
            for t in self.timings
            if t.over_budget
        ]

    def get_summary(self) -> Dict:
        """計測結果のサマリー（result.json / result.md 用）"""
        total = sum(t.seconds for t in self.timings)
        return {
            "total_tasks": len(self.timings),
            "total_duration": format_duration(total),
            "total_duration_seconds": total,
            "tasks": [t.to_dict() for t in self.timings],
            "over_budget": self.over_budget(),
        }

    def print_summary(self):
        summary = self.get_summary()
        print("\n" + "=" * 60)
        print("処理時間サマリー")
        print("=" * 60)
        if not self.timings:
            print("計測データがありません")
        for i, task in enumerate(summary["tasks"], 1):
            print(f"{i}. {task['name']}: {task['duration']}")
        print("-" * 60)
        print(f"検査数: {summary['total_tasks']}  合計: {summary['total_duration']}")
        for item in summary["over_budget"]:
            print(f"⚠ 目安超過: {item['name']} ({item['seconds']:.2f}秒 > {item['budget']:.0f}秒)")
        print("=" * 60 + "\n")
