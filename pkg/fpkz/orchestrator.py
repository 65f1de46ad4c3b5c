"""
受け入れ検査のオーケストレーター
"""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional

from .checks import BaseCheck, CheckResult, default_checks
from .config import Config

logger = logging.getLogger(__name__)


def _run_check(check: BaseCheck) -> CheckResult:
    return check.run()


def _error_result(check: BaseCheck, error: BaseException) -> CheckResult:
    """例外を失敗した検査結果に変換"""
    return CheckResult(
        name=check.name,
        criterion=check.criterion,
        passed=False,
        error=f"{type(error).__name__}: {error}",
    )


class CheckOrchestrator:
    """受け入れ検査をまとめて管理し、並列実行するオーケストレーター"""

    def __init__(self, config: Config, checks: Optional[List[BaseCheck]] = None):
        self.config = config
        self.checks: List[BaseCheck] = checks if checks is not None else default_checks(config)

    async def run_all(self) -> Dict[str, CheckResult]:
        """
        全ての検査を実行

        Returns:
            Dict[str, CheckResult]: 検査名をキーとした結果の辞書（検査の登録順）
        """
        if not self.checks:
            raise ValueError("実行する検査がありません")

        if self.config.enable_parallel_processing:
            # 並列実行（CPU を使う計算なのでプロセスプールに渡す）
            loop = asyncio.get_running_loop()
            workers = self.config.max_workers or None
            with ProcessPoolExecutor(max_workers=workers) as executor:
                tasks = [loop.run_in_executor(executor, _run_check, check) for check in self.checks]
                results = await asyncio.gather(*tasks, return_exceptions=True)

            outcomes = {}
            for check, result in zip(self.checks, results):
                if isinstance(result, BaseException):
                    logger.error("検査 %s で例外: %s", check.name, result)
                    outcomes[check.name] = _error_result(check, result)
                else:
                    outcomes[check.name] = result
            return outcomes
        else:
            # 逐次実行
            return self.run_all_sync()

    def run_all_sync(self) -> Dict[str, CheckResult]:
        """全ての検査を逐次実行"""
        outcomes = {}
        for check in self.checks:
            try:
                outcomes[check.name] = check.run()
            except Exception as e:
                logger.error("検査 %s で例外: %s", check.name, e)
                outcomes[check.name] = _error_result(check, e)
        return outcomes

    def run(self) -> Dict[str, CheckResult]:
        """設定に従って実行（同期インターフェース）"""
        return asyncio.run(self.run_all())

    def get_check_names(self) -> List[str]:
        return [check.name for check in self.checks]
