"""
出力管理モジュール
実行ごとのディレクトリ output/<YYYYmmdd_HHMMSS>/ に log.txt、result.json、result.md を保存
"""

import json
import logging
from dataclasses import asdict, is_dataclass
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
MAX_FAILURES_IN_MARKDOWN = 20
LOG_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
}


def to_jsonable(obj: Any) -> Any:
    """検査結果などを json.dump できる形に変換"""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, set):
        return [to_jsonable(v) for v in sorted(obj, key=repr)]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        # numpy のスカラー
        return obj.item()
    return obj


class OutputManager:
    """実行ログと検査結果の保存先を管理"""

    def __init__(self, base_dir: str = "output", save: bool = True, verbose: bool = False):
        """
        初期化

        Args:
            base_dir: 基底ディレクトリパス
            save: ファイルに保存するか（False ならディレクトリを作らない）
            verbose: コンソールに INFO 以上を表示するか
        """
        self.save = save
        self.session_time = datetime.now()
        self.output_dir = Path(base_dir) / self.session_time.strftime("%Y%m%d_%H%M%S")
        self.log_file = self.output_dir / "log.txt"
        self.result_json = self.output_dir / "result.json"
        self.result_md = self.output_dir / "result.md"

        if self.save:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        self.logger = self._build_logger(verbose)

    def _build_logger(self, verbose: bool) -> logging.Logger:
        logger = logging.getLogger(f"fpkz.run.{self.output_dir.name}.{id(self)}")
        logger.setLevel(logging.INFO)
        logger.propagate = False
        formatter = logging.Formatter(LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")

        handlers = [(logging.StreamHandler(), logging.INFO if verbose else logging.ERROR)]
        if self.save:
            handlers.append((logging.FileHandler(self.log_file, encoding="utf-8"), logging.INFO))
        for handler, level in handlers:
            handler.setLevel(level)
            handler.setFormatter(formatter)
            logger.addHandler(handler)
        return logger

    def close(self):
        for handler in list(self.logger.handlers):
            handler.close()
            self.logger.removeHandler(handler)

    def log(self, message: str, level: str = "info"):
        """
        ログメッセージを記録

        Args:
            message: ログメッセージ
            level: ログレベル名 (debug, info, warning, error)
        """
        self.logger.log(LOG_LEVELS.get(level.lower(), logging.INFO), message)

    def save_result(self, result: Dict[str, Any], command: Optional[str] = None):
        """result.json に保存（save=False なら何もしない）"""
        if not self.save:
            return
        document = {
            "timestamp": self.session_time.isoformat(),
            "command": command,
            "result": to_jsonable(result),
        }
        self.result_json.write_text(json.dumps(document, ensure_ascii=False, indent=2), encoding="utf-8")
        self.log(f"結果を保存しました: {self.result_json}")

    def save_result_markdown(self, report: Dict[str, Any], command: Optional[str] = None):
        """
        result.md に保存

        Args:
            report: summary, checks（CheckResult のリスト）, comparison, time_summary を持つ辞書
            command: 実行したサブコマンド
        """
        if not self.save:
            return
        self.result_md.write_text("\n".join(self._markdown_lines(report, command)), encoding="utf-8")
        self.log(f"結果を保存しました: {self.result_md}")

    def _markdown_lines(self, report: Dict[str, Any], command: Optional[str]) -> Iterator[str]:
        yield "# fpkz 実行結果"
        yield ""
        yield f"**実行日時**: {self.session_time.strftime('%Y年%m月%d日 %H:%M:%S')}"
        if command:
            yield f"**コマンド**: `{command}`"
        yield ""

        summary = report.get("summary")
        if summary:
            yield "## 概要"
            yield ""
            yield f"- **判定**: {'合格' if summary['all_passed'] else '不合格'}"
            yield f"- **検査数**: {summary['total']}（合格 {summary['passed']}、不合格 {summary['failed']}）"
            yield ""

        checks = report.get("checks") or []
        if checks:
            yield "## 検査結果"
            yield ""
            yield "| 検査 | 基準 | 判定 | 件数 | 秒 |"
            yield "|---|---|---|---|---|"
            for c in checks:
                criterion = "-" if c.criterion is None else c.criterion
                seconds = "N/A" if c.duration_seconds is None else f"{c.duration_seconds:.2f}"
                yield f"| {c.name} | {criterion} | {'成功' if c.passed else '失敗'} | {c.cases} | {seconds} |"
            yield ""

        for c in (c for c in checks if not c.passed):
            yield f"### 失敗: {c.name}"
            yield ""
            if c.error:
                yield f"⚠️ **エラー**: {c.error}"
            for failure in c.failures[:MAX_FAILURES_IN_MARKDOWN]:
                yield f"- {failure}"
            if len(c.failures) > MAX_FAILURES_IN_MARKDOWN:
                yield f"*... 他 {len(c.failures) - MAX_FAILURES_IN_MARKDOWN}件*"
            yield ""

        if report.get("comparison"):
            yield "## 検査一覧表"
            yield ""
            yield "```"
            yield report["comparison"]
            yield "```"
            yield ""

        timing = report.get("time_summary")
        if timing:
            yield "## 処理時間"
            yield ""
            yield f"- **合計**: {timing['total_duration']}（{timing['total_tasks']} 検査）"
            for task in timing["tasks"]:
                yield f"- {task['name']}: {task['duration']}"
            for item in timing.get("over_budget", []):
                yield f"- ⚠️ 目安超過: {item['name']} ({item['seconds']:.2f}秒 > {item['budget']:.0f}秒)"
            yield ""

    def get_output_paths(self) -> Dict[str, Path]:
        return {
            "log": self.log_file,
            "result_json": self.result_json,
            "result_md": self.result_md,
            "output_dir": self.output_dir,
        }

    def print_summary(self):
        """保存先を表示"""
        if not self.save:
            return
        print(f"\n出力ディレクトリ: {self.output_dir}")
        for path in (self.log_file, self.result_json, self.result_md):
            print(f"  - {path.name}")
        print()
