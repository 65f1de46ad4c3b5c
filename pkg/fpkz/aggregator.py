"""
検査結果の集約
複数の検査結果を決定的な順序でまとめ、表に整形する
"""

from typing import Any, Dict, List

from .checks import CheckResult


def _order(result: CheckResult):
    # 基準番号のない検査は最後
    return (result.criterion is None, result.criterion or 0, result.name)


class ResultAggregator:
    """検査結果を集約するクラス"""

    def ordered(self, results: Dict[str, CheckResult]) -> List[CheckResult]:
        return sorted(results.values(), key=_order)

    def summarize(self, results: Dict[str, CheckResult]) -> Dict[str, Any]:
        """
        合否のサマリー

        Args:
            results: 検査名をキーとした結果の辞書

        Returns:
            Dict[str, Any]: total, passed, failed, all_passed, failed_checks
        """
        ordered = self.ordered(results)
        failed = [r.name for r in ordered if not r.passed]
        return {
            "total": len(ordered),
            "passed": len(ordered) - len(failed),
            "failed": len(failed),
            "all_passed": bool(ordered) and not failed,
            "failed_checks": failed,
        }

    def format_results(self, results: Dict[str, CheckResult]) -> str:
        """
        検査結果を読みやすい形式にフォーマット

        Args:
            results: 検査名をキーとした結果の辞書

        Returns:
            str: フォーマットされた結果
        """
        lines = []
        lines.append("=" * 80)
        lines.append("受け入れ検査の結果")
        lines.append("=" * 80)

        for result in self.ordered(results):
            criterion = f"基準 {result.criterion}" if result.criterion is not None else "補助"
            status = "成功" if result.passed else "失敗"
            lines.append(f"\n【{result.name} ({criterion})】 {status}")
            lines.append("-" * 80)
            lines.append(f"ケース数: {result.cases}")
            if result.duration_seconds is not None:
                lines.append(f"処理時間: {result.duration_seconds:.2f}秒")
            if result.error:
                lines.append(f"⚠ エラー: {result.error}")
            for failure in result.failures[:10]:
                lines.append(f"  ✗ {failure}")
            if len(result.failures) > 10:
                lines.append(f"  ... 他 {len(result.failures) - 10}件")

        return "\n".join(lines)

    def create_comparison_table(self, results: Dict[str, CheckResult]) -> str:
        """
        検査の一覧表を作成

        Args:
            results: 検査名をキーとした結果の辞書

        Returns:
            str: 一覧表（名前 | 判定 | 件数 | 秒 | 詳細）
        """
        lines = []
        lines.append("=" * 100)
        header = f"{'検査':<22} | {'判定':<6} | {'件数':>8} | {'秒':>8} | 詳細"
        lines.append(header)
        lines.append("-" * 100)

        for result in self.ordered(results):
            status = "成功" if result.passed else "失敗"
            seconds = f"{result.duration_seconds:.2f}" if result.duration_seconds is not None else "N/A"
            detail = result.error or (result.failures[0] if result.failures else "")
            row = f"{result.name:<22} | {status:<6} | {result.cases:>8} | {seconds:>8} | {detail[:40]}"
            lines.append(row)

        lines.append("=" * 100)
        return "\n".join(lines)
