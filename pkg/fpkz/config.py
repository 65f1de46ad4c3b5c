"""
設定管理モジュール
環境変数とデフォルト設定を管理
"""

import os
from dataclasses import dataclass, field, replace
from typing import Tuple

from dotenv import load_dotenv

load_dotenv()


def _int_list(value: str) -> Tuple[int, ...]:
    return tuple(int(v) for v in value.split(",") if v.strip())


@dataclass
class SweepConfig:
    """受け入れ検査のインスタンス掃引の設定"""
    primes: Tuple[int, ...] = (5, 7, 11, 13, 17, 19)
    q_values: Tuple[int, ...] = (2, 3, 5)
    n_values: Tuple[int, ...] = (2, 3, 4)
    gamma_max_prime: int = 31  # ガンマ恒等式・ベータ積分の全数検査
    det_max_prime: int = 19
    det_max_n: int = 4
    oracle_max_prime: int = 11
    oracle_max_n: int = 3
    initial_value_max_prime: int = 7
    extra_periods: int = 2  # 次数の上限 ΣM + extra_periods * p

    @classmethod
    def quick(cls) -> "SweepConfig":
        """動作確認用の縮小版"""
        return cls(
            primes=(5, 7),
            q_values=(2, 3),
            n_values=(2, 3),
            gamma_max_prime=13,
            det_max_prime=7,
            det_max_n=3,
            oracle_max_prime=5,
            oracle_max_n=2,
            initial_value_max_prime=5,
            extra_periods=1,
        )


@dataclass
class Config:
    """全体設定"""

    # 掃引設定
    sweep: SweepConfig = field(default_factory=SweepConfig)

    # オラクル設定
    max_unknowns: int = 20000

    # 出力設定
    output_dir: str = "output"
    save_output: bool = True

    # 並列処理
    enable_parallel_processing: bool = True
    max_workers: int = 0  # 0 は executor の既定値

    # デバッグ
    debug: bool = False
    verbose: bool = False

    @classmethod
    def from_env(cls) -> "Config":
        """環境変数から設定を読み込む"""

        sweep = SweepConfig(
            primes=_int_list(os.getenv("SWEEP_PRIMES", "5,7,11,13,17,19")),
            q_values=_int_list(os.getenv("SWEEP_Q", "2,3,5")),
            n_values=_int_list(os.getenv("SWEEP_N", "2,3,4")),
            gamma_max_prime=int(os.getenv("GAMMA_MAX_PRIME", "31")),
            det_max_prime=int(os.getenv("DET_MAX_PRIME", "19")),
            oracle_max_prime=int(os.getenv("ORACLE_MAX_PRIME", "11")),
            oracle_max_n=int(os.getenv("ORACLE_MAX_N", "3")),
            initial_value_max_prime=int(os.getenv("INITIAL_VALUE_MAX_PRIME", "7")),
            extra_periods=int(os.getenv("FPKZ_EXTRA_PERIODS", "2")),
        )

        return cls(
            sweep=sweep,
            max_unknowns=int(os.getenv("FPKZ_MAX_UNKNOWNS", "20000")),
            output_dir=os.getenv("FPKZ_OUTPUT_DIR", "output"),
            save_output=os.getenv("FPKZ_SAVE_OUTPUT", "true").lower() == "true",
            enable_parallel_processing=os.getenv("ENABLE_PARALLEL", "true").lower() == "true",
            max_workers=int(os.getenv("FPKZ_MAX_WORKERS", "0")),
            debug=os.getenv("DEBUG", "false").lower() == "true",
            verbose=os.getenv("VERBOSE", "false").lower() == "true",
        )

    def with_quick_sweep(self) -> "Config":
        """掃引だけを縮小版に差し替えた設定（オラクルの上限と次数の余裕は維持）"""
        return replace(self, sweep=SweepConfig.quick())


# デフォルト設定インスタンス
default_config = Config.from_env()
