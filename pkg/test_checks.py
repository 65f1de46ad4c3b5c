"""
受け入れ検査・オーケストレーター・集約・出力のテスト（縮小版の掃引）
"""

import json
from typing import Any, Dict

import pytest

from fpkz.aggregator import ResultAggregator
from fpkz.checks import BaseCheck, CaseCounter, CheckResult, default_checks
from fpkz.checks.oracle_checks import oracle_bases
from fpkz.config import Config, SweepConfig
from fpkz.orchestrator import CheckOrchestrator
from fpkz.output_manager import OutputManager
from fpkz.sweep import ample_sweep
from fpkz.time_tracker import TimeTracker


@pytest.fixture(scope="module")
def quick_config() -> Config:
    return Config(sweep=SweepConfig.quick(), save_output=False, enable_parallel_processing=False)


@pytest.fixture(scope="module")
def quick_results(quick_config):
    return CheckOrchestrator(quick_config).run()


class BrokenCheck(BaseCheck):
    criterion = 99

    @property
    def name(self) -> str:
        return "broken"

    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        raise RuntimeError("壊れた検査")


class EmptyCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "empty"

    def execute(self, counter: CaseCounter) -> Dict[str, Any]:
        return {}


def test_default_checks_cover_every_criterion(quick_config):
    criteria = sorted(c.criterion for c in default_checks(quick_config) if c.criterion is not None)
    assert criteria == list(range(1, 11))


def test_quick_selftest_passes(quick_results):
    failed = {name: (r.error, r.failures[:3]) for name, r in quick_results.items() if not r.passed}
    assert not failed
    assert all(r.cases > 0 for r in quick_results.values())


def test_results_are_ordered_by_criterion(quick_results):
    ordered = ResultAggregator().ordered(quick_results)
    assert [r.criterion for r in ordered][:10] == list(range(1, 11))
    assert ordered[-1].criterion is None


def test_exceptions_become_failed_results(quick_config):
    orchestrator = CheckOrchestrator(quick_config, checks=[BrokenCheck(quick_config), EmptyCheck(quick_config)])
    results = orchestrator.run()
    assert orchestrator.get_check_names() == ["broken", "empty"]
    assert not results["broken"].passed
    assert "RuntimeError" in results["broken"].error
    # ケースが 0 件の検査は合格にしない
    assert not results["empty"].passed


def test_oracle_bases_reject_every_non_congruent_degree(quick_config):
    sweep = quick_config.sweep
    counter = CaseCounter()
    yielded = list(oracle_bases(quick_config, counter))
    expected = 0
    for inst in ample_sweep(sweep, sweep.oracle_max_prime, sweep.oracle_max_n):
        cap = inst.M_total + sweep.extra_periods * inst.p
        expected += sum(1 for d in range(cap + 1) if (d - inst.M_total) % inst.p)
    assert counter.cases == expected
    assert counter.failure_count == 0
    assert all((d - inst.M_total) % inst.p == 0 for inst, d, _ in yielded)


def test_orchestrator_without_checks(quick_config):
    with pytest.raises(ValueError):
        CheckOrchestrator(quick_config, checks=[]).run()


def test_case_counter_caps_recorded_failures():
    counter = CaseCounter()
    for k in range(60):
        counter.check(False, f"case {k}")
    assert counter.cases == 60
    assert counter.failure_count == 60
    assert len(counter.failures) == 50


def test_aggregator_summary_and_tables():
    results = {
        "a": CheckResult(name="a", criterion=2, passed=True, cases=3, duration_seconds=0.5),
        "b": CheckResult(name="b", criterion=1, passed=False, cases=1, failures=["x"]),
    }
    aggregator = ResultAggregator()
    summary = aggregator.summarize(results)
    assert summary == {"total": 2, "passed": 1, "failed": 1, "all_passed": False, "failed_checks": ["b"]}
    text = aggregator.format_results(results)
    assert "【b (基準 1)】 失敗" in text
    table = aggregator.create_comparison_table(results)
    assert table.index("b ") < table.index("a ")


def test_time_tracker_budgets():
    tracker = TimeTracker(budgets={"slow": 1.0})
    tracker.record("slow", 2.5)
    tracker.record("fast", 0.1)
    with tracker.measure("measured"):
        pass
    summary = tracker.get_summary()
    assert summary["total_tasks"] == 3
    assert summary["over_budget"] == [{"name": "slow", "seconds": 2.5, "budget": 1.0}]


def test_default_budgets_accept_a_full_solution_sweep():
    tracker = TimeTracker()
    assert not tracker.record("kz_solutions", 163.8).over_budget
    assert tracker.record("worked_example", 6.0).over_budget
    assert tracker.record("determinant", 121.0).over_budget
    assert not tracker.record("unbudgeted", 1e6).over_budget


def test_output_manager_writes_run_directory(tmp_path):
    output = OutputManager(base_dir=str(tmp_path))
    results = {"a": CheckResult(name="a", criterion=1, passed=True, cases=2, duration_seconds=0.1)}
    aggregator = ResultAggregator()
    report = {
        "summary": aggregator.summarize(results),
        "checks": aggregator.ordered(results),
        "comparison": aggregator.create_comparison_table(results),
        "time_summary": TimeTracker().get_summary(),
    }
    output.log("テスト")
    output.save_result({**report, "checks": [r.to_dict() for r in report["checks"]]}, command="selftest")
    output.save_result_markdown(report, command="selftest")
    output.close()

    paths = output.get_output_paths()
    data = json.loads(paths["result_json"].read_text(encoding="utf-8"))
    assert data["command"] == "selftest"
    assert data["result"]["summary"]["all_passed"] is True
    assert "| a | 1 | 成功 | 2 |" in paths["result_md"].read_text(encoding="utf-8")
    assert "テスト" in paths["log"].read_text(encoding="utf-8")


def test_output_manager_without_saving(tmp_path):
    output = OutputManager(base_dir=str(tmp_path / "none"), save=False)
    output.save_result({"x": 1})
    output.close()
    assert not (tmp_path / "none").exists()


def test_config_from_env(monkeypatch):
    monkeypatch.setenv("SWEEP_PRIMES", "5,7")
    monkeypatch.setenv("FPKZ_MAX_UNKNOWNS", "123")
    monkeypatch.setenv("ENABLE_PARALLEL", "false")
    config = Config.from_env()
    assert config.sweep.primes == (5, 7)
    assert config.max_unknowns == 123
    assert not config.enable_parallel_processing
    quick = config.with_quick_sweep()
    assert quick.sweep == SweepConfig.quick()
    assert quick.max_unknowns == 123
