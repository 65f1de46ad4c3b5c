"""
コマンドラインのテスト
"""

import json

import pytest

from fpkz.main import main

SMALL = ["-p", "5", "-q", "3", "-m", "1,1"]


@pytest.fixture(autouse=True)
def no_output_files(monkeypatch, tmp_path):
    monkeypatch.setenv("FPKZ_OUTPUT_DIR", str(tmp_path / "output"))
    monkeypatch.setenv("FPKZ_SAVE_OUTPUT", "false")
    monkeypatch.setenv("ENABLE_PARALLEL", "false")


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


def test_info(capsys):
    code, data = run_json(capsys, "info", "-p", "13", "-q", "3", "-m", "2,2,2,1,1,1")
    assert code == 0
    assert data["schema"] == "fpkz/1"
    assert data["M"] == [8, 8, 8, 4, 4, 4]
    assert data["r"] == 2
    assert data["ample"] is False
    assert data["delta"] == [23, 10]
    assert data["i_of_l"] == [3, 2]


def test_info_text(capsys):
    assert main(["info", *SMALL]) == 0
    out = capsys.readouterr().out
    assert "M        : 3,3" in out
    assert "ample    : true" in out


def test_solve_then_verify_and_reduce(capsys, tmp_path):
    code, document = run_json(capsys, "solve", *SMALL, "--l", "1")
    assert code == 0
    assert document["degree"] == 1
    path = tmp_path / "solution.json"
    path.write_text(json.dumps(document), encoding="utf-8")

    code, report = run_json(capsys, "verify", "--in", str(path))
    assert code == 0
    assert report["passed"] is True

    code, reduction = run_json(capsys, "reduce", "--in", str(path))
    assert code == 0
    assert reduction["reducible"] is True
    assert reduction["terms"][0]["l"] == 1


def test_verify_reports_failure(capsys, tmp_path):
    document = {
        "schema": "fpkz/1",
        "instance": {"p": 5, "q": 3, "m": [1, 1]},
        "solution": {"p": 5, "arity": 2, "coords": [
            {"p": 5, "arity": 2, "terms": [{"exp": [0, 0], "coeff": 1}]},
            {"p": 5, "arity": 2, "terms": [{"exp": [0, 0], "coeff": 4}]},
        ]},
    }
    path = tmp_path / "constant.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    code, report = run_json(capsys, "verify", "--in", str(path))
    assert code == 1
    assert report["passed"] is False
    assert report["first_failure"].startswith("standard")

    # 解でない入力の簡約は失敗扱い
    assert main(["reduce", "--in", str(path)]) == 1


def test_malformed_json_is_a_usage_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"schema": "fpkz/1", "instance": ', encoding="utf-8")
    assert main(["verify", "--in", str(path)]) == 2
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"]


def test_missing_file(tmp_path):
    assert main(["verify", "--in", str(tmp_path / "missing.json")]) == 2


def test_leading(capsys):
    code, data = run_json(capsys, "leading", "-p", "13", "-q", "3", "-m", "2,2,2,1,1,1",
                          "--l", "1", "--sigma", "6,5,4,3,2,1")
    assert code == 0
    assert data["match"] is True
    assert data["actual_coeff"] == [9, 4, 0, 0, 0, 0]
    assert data["actual_exponents"] == [0, 3, 8, 4, 4, 4]
    assert data["gamma_form_sign_offset"] == 1


def test_det(capsys):
    code, data = run_json(capsys, "det", *SMALL)
    assert code == 0
    assert data["equal"] is True
    assert data["gamma_form_sign_offset"] == 1
    assert main(["det", "-p", "13", "-q", "3", "-m", "2,2,2,1,1,1"]) == 2


def test_search(capsys):
    code, data = run_json(capsys, "search", "-p", "3", "-q", "2", "-m", "1,1", "--degree", "2")
    assert code == 0
    assert len(data["basis"]) == 1
    assert main(["search", *SMALL, "--degree", "-1"]) == 2


def test_search_resource_limit(monkeypatch):
    monkeypatch.setenv("FPKZ_MAX_UNKNOWNS", "5")
    assert main(["search", *SMALL, "--degree", "10"]) == 2


def test_gamma_and_audit(capsys):
    code, data = run_json(capsys, "gamma", "-p", "7", "--x", "3")
    assert code == 0
    assert data["value"] == 5
    code, data = run_json(capsys, "audit", "-p", "11")
    assert code == 0
    assert data["lemma_offsets"] == [1]
    assert data["consistent"] is True


def test_initial(capsys):
    code, data = run_json(capsys, "initial", *SMALL, "--point", "0,1", "--w", "1")
    assert code == 0
    assert data["coefficients"] == [1]
    assert main(["initial", *SMALL, "--point", "1,1", "--w", "1"]) == 2


def test_uniqueness(capsys):
    code, data = run_json(capsys, "uniqueness", *SMALL, "--l", "1")
    assert code == 0
    assert data["unique"] is True
    assert main(["uniqueness", *SMALL, "--l", "2"]) == 2


@pytest.mark.parametrize("argv", [
    [],
    ["info"],
    ["info", "-p", "4", "-q", "3", "-m", "1,1"],
    ["info", "-p", "5", "-q", "3", "-m", "1,x"],
    ["solve", *SMALL, "--l", "3"],
    ["gamma", "-p", "0", "--x", "3"],
    ["gamma", "-p", "4", "--x", "3"],
    ["gamma", "-p", "2", "--x", "1"],
    ["audit", "-p", "4"],
])
def test_usage_errors(argv):
    assert main(argv) == 2


def test_selftest_quick(capsys):
    code, data = run_json(capsys, "selftest", "--quick")
    assert code == 0
    assert data["passed"] is True
    assert data["profile"] == "quick"
    assert [c["criterion"] for c in data["checks"]][:10] == list(range(1, 11))
