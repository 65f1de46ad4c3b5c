"""
メインエントリーポイント
コマンドラインから構成・検証・受け入れ検査を実行する
"""

import argparse
import json
import logging
import sys
import traceback
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from .aggregator import ResultAggregator
from .analysis import i_sequence, leading_prediction, prediction_sign_offset, verify_determinant
from .config import Config
from .construct import hypergeometric_solution
from .errors import FpkzError, NotASolution, SchemaError
from .fp_arith import gamma_fp, gamma_sign_audit
from .kz_core import KzInstance, new_instance, verify_kz_solution
from .mpoly import identity_sigma, leading_term
from .oracle import initial_value, reduce_to_hypergeometric, solve_homogeneous, uniqueness_check
from .orchestrator import CheckOrchestrator
from .output_manager import OutputManager
from .schemas import (
    AuditModel,
    BasisDocument,
    CheckModel,
    GammaModel,
    InfoModel,
    InitialValueModel,
    LeadingModel,
    SelftestModel,
    SolutionDocument,
    UniquenessModel,
    VecPolyModel,
    VerificationReportModel,
    dump,
    parse_solution_document,
)
from .sl2_model import from_w_coords
from .time_tracker import TimeTracker, format_duration

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"カンマ区切りの整数列ではありません: {text}")


def build_parser() -> argparse.ArgumentParser:
    """サブコマンドを持つパーサーを作成"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON で出力")
    common.add_argument("--verbose", action="store_true", help="ログをコンソールに表示")
    common.add_argument("--out", default=None, help="出力ディレクトリ（selftest）")

    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("-p", type=int, required=True, help="素数 p")
    instance.add_argument("-q", type=int, required=True, help="素数 q（q < p）")
    instance.add_argument("-m", type=_int_list, required=True, help="m_1,...,m_n（0 < m_i < q）")

    parser = argparse.ArgumentParser(prog="fpkz", description="F_p 上の KZ 方程式の多項式解")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("info", parents=[common, instance], help="M, r, ample, i(l) を表示")

    solve = sub.add_parser("solve", parents=[common, instance], help="I^[l] を構成")
    solve.add_argument("--l", type=int, required=True)

    verify = sub.add_parser("verify", parents=[common], help="解の JSON を検証")
    verify.add_argument("--in", dest="input", required=True)

    leading = sub.add_parser("leading", parents=[common, instance], help="σ-先頭項の予測と比較")
    leading.add_argument("--l", type=int, required=True)
    leading.add_argument("--sigma", type=_int_list, default=None)

    sub.add_parser("det", parents=[common, instance], help="行列式の定理を検証")

    search = sub.add_parser("search", parents=[common, instance], help="d 次斉次解の基底")
    search.add_argument("--degree", type=int, required=True)

    reduce = sub.add_parser("reduce", parents=[common], help="解を超幾何解の加群に簡約")
    reduce.add_argument("--in", dest="input", required=True)

    gamma = sub.add_parser("gamma", parents=[common], help="Γ_{F_p}(x)")
    gamma.add_argument("-p", type=int, required=True)
    gamma.add_argument("--x", type=int, required=True)

    audit = sub.add_parser("audit", parents=[common], help="ガンマ恒等式と符号ずれの監査")
    audit.add_argument("-p", type=int, required=True)

    initial = sub.add_parser("initial", parents=[common, instance], help="初期値から係数を求める")
    initial.add_argument("--point", type=_int_list, required=True)
    initial.add_argument("--w", type=_int_list, required=True, help="w_j 基底での座標")

    uniqueness = sub.add_parser("uniqueness", parents=[common, instance], help="I^[l] の一意性")
    uniqueness.add_argument("--l", type=int, required=True)

    selftest = sub.add_parser("selftest", parents=[common], help="受け入れ検査を一括実行")
    selftest.add_argument("--quick", action="store_true", help="縮小版の掃引")

    return parser


def _instance(args) -> KzInstance:
    return new_instance(args.p, args.q, args.m)


def _emit(args, model, text: str):
    print(dump(model) if args.json else text)


def _fmt(values: Sequence) -> str:
    return ",".join(str(v) for v in values)


def _read_document(path: str) -> SolutionDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"ファイルを読めません: {e}", path) from e
    return parse_solution_document(text)


def cmd_info(args, config: Config, output: OutputManager) -> int:
    inst = _instance(args)
    seq = i_sequence(inst)
    deltas = [inst.delta(l) for l in range(1, inst.r + 1)]
    model = InfoModel(instance=inst.to_model(), M=list(inst.M), r=inst.r, ample=inst.ample,
                      delta=deltas, i_of_l=list(seq))
    lines = [
        f"instance : {inst.label()}",
        f"M        : {_fmt(inst.M)}",
        f"r        : {inst.r}",
        f"ample    : {str(inst.ample).lower()}",
        f"delta    : {_fmt(deltas) or '-'}",
        f"i(l)     : {', '.join(f'i({l})={i}' for l, i in enumerate(seq, 1)) or '-'}",
    ]
    _emit(args, model, "\n".join(lines))
    return EXIT_OK


def cmd_solve(args, config: Config, output: OutputManager) -> int:
    inst = _instance(args)
    solution = hypergeometric_solution(inst, args.l)
    output.log(f"I^[{args.l}] を構成しました {inst.label()}: 次数 {solution.degree}")
    model = SolutionDocument(instance=inst.to_model(), l=args.l, degree=solution.degree,
                             solution=VecPolyModel.from_vecpoly(solution.poly))
    _emit(args, model, f"I^[{args.l}] (degree {solution.degree}) = {solution.poly.to_text()}")
    return EXIT_OK


def cmd_verify(args, config: Config, output: OutputManager) -> int:
    document = _read_document(args.input)
    inst = KzInstance.from_model(document.instance)
    I = document.solution.to_vecpoly()
    report = verify_kz_solution(inst, I)
    output.log(f"検証 {inst.label()}: passed={report.passed}")
    model = VerificationReportModel(
        instance=inst.to_model(),
        passed=report.passed,
        algebraic_ok=report.algebraic_ok,
        standard_pass=report.standard_pass,
        m_weighted_pass=report.m_weighted_pass,
        first_failure=report.first_failure,
        residuals={k: v.to_dict() for k, v in report.residuals.items()},
    )
    lines = [
        f"instance        : {inst.label()}",
        f"passed          : {str(report.passed).lower()}",
        f"algebraic_ok    : {str(report.algebraic_ok).lower()}",
        f"standard_pass   : {str(report.standard_pass).lower()}",
        f"m_weighted_pass : {str(report.m_weighted_pass).lower()}",
        f"first_failure   : {report.first_failure or '-'}",
    ]
    _emit(args, model, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_leading(args, config: Config, output: OutputManager) -> int:
    inst = _instance(args)
    sigma = tuple(args.sigma) if args.sigma else identity_sigma(inst.n)
    prediction = leading_prediction(inst, args.l, sigma)
    actual = leading_term(hypergeometric_solution(inst, args.l).poly, prediction.sigma)
    match = (actual.exponents == prediction.exponents
             and actual.coeff_vector() == prediction.coeff_vector.a_coords)
    offset = prediction_sign_offset(inst, args.l, sigma)
    model = LeadingModel(
        instance=inst.to_model(), l=args.l, sigma=list(prediction.sigma), i_of_l=prediction.i_of_l,
        scalar=prediction.scalar.value,
        predicted_coeff=list(prediction.coeff_vector.a_coords), predicted_exponents=list(prediction.exponents),
        actual_coeff=list(actual.coeff_vector()), actual_exponents=list(actual.exponents),
        match=match, gamma_form_sign_offset=offset,
    )
    lines = [
        f"instance  : {inst.label()}",
        f"l, sigma  : {args.l}, ({_fmt(prediction.sigma)})",
        f"i(l)      : {prediction.i_of_l}",
        f"predicted : ({_fmt(prediction.coeff_vector.a_coords)}) z^({_fmt(prediction.exponents)})",
        f"actual    : ({_fmt(actual.coeff_vector())}) z^({_fmt(actual.exponents)})",
        f"match     : {str(match).lower()}",
    ]
    _emit(args, model, "\n".join(lines))
    return EXIT_OK if match else EXIT_FAILURE


def cmd_det(args, config: Config, output: OutputManager) -> int:
    inst = _instance(args)
    report = verify_determinant(inst)
    output.log(f"行列式 {inst.label()}: equal={report.equal}")
    lines = [
        f"instance               : {inst.label()}",
        f"det                    : {report.det.to_text()}",
        f"closed_form            : {report.closed_form.to_text()}",
        f"equal                  : {str(report.equal).lower()}",
        f"gamma_form_sign_offset : {report.gamma_form_sign_offset}",
        f"ode_ok                 : {str(report.ode_ok).lower()}",
        f"degree_ok              : {str(report.degree_ok).lower()}",
        f"leading_monomial_ok    : {str(report.leading_monomial_ok).lower()}",
        f"divisible              : {str(report.divisible).lower()}",
    ]
    _emit(args, report.to_model(), "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_search(args, config: Config, output: OutputManager) -> int:
    inst = _instance(args)
    basis = solve_homogeneous(inst, args.degree, config.max_unknowns)
    output.log(f"斉次解 {inst.label()} d={args.degree}: 次元 {len(basis)}")
    model = BasisDocument(instance=inst.to_model(), degree=args.degree,
                          basis=[VecPolyModel.from_vecpoly(b) for b in basis])
    lines = [f"dimension : {len(basis)}"] + [f"  [{k}] {b.to_text()}" for k, b in enumerate(basis, 1)]
    _emit(args, model, "\n".join(lines))
    return EXIT_OK


def cmd_reduce(args, config: Config, output: OutputManager) -> int:
    document = _read_document(args.input)
    inst = KzInstance.from_model(document.instance)
    result = reduce_to_hypergeometric(inst, document.solution.to_vecpoly())
    output.log(f"簡約 {inst.label()}: reducible={result.reducible}")
    if result.reducible:
        lines = ["reducible : true"] + [f"  l={l}: {c.to_text()}" for l, c in result.terms]
    else:
        lines = [
            "reducible : false",
            f"leading   : ({_fmt(result.leading_coeff)}) z^({_fmt(result.leading_exponents)})",
        ]
    _emit(args, result.to_model(), "\n".join(lines))
    return EXIT_OK if result.reducible else EXIT_FAILURE


def cmd_gamma(args, config: Config, output: OutputManager) -> int:
    value = gamma_fp(args.x, args.p).value
    _emit(args, GammaModel(p=args.p, x=args.x, value=value), f"Gamma_F{args.p}({args.x}) = {value}")
    return EXIT_OK


def cmd_audit(args, config: Config, output: OutputManager) -> int:
    audit = gamma_sign_audit(args.p)
    offsets = sorted(audit.lemma_offsets, key=repr)
    model = AuditModel(p=audit.p, wilson=audit.wilson, reflection=audit.reflection,
                       reflection_literal_at_zero=audit.reflection_literal_at_zero,
                       periodicity=audit.periodicity, lemma_offsets=offsets,
                       lemma_points=audit.lemma_points, consistent=audit.consistent)
    lines = [
        f"p             : {audit.p}",
        f"wilson        : {str(audit.wilson).lower()}",
        f"reflection    : {str(audit.reflection).lower()}",
        f"periodicity   : {str(audit.periodicity).lower()}",
        f"lemma_offsets : {offsets} ({audit.lemma_points} points)",
        f"consistent    : {str(audit.consistent).lower()}",
    ]
    _emit(args, model, "\n".join(lines))
    return EXIT_OK if audit.passed else EXIT_FAILURE


def cmd_initial(args, config: Config, output: OutputManager) -> int:
    inst = _instance(args)
    w = from_w_coords(inst, args.w)
    coefficients = initial_value(inst, args.point, w)
    model = InitialValueModel(instance=inst.to_model(), point=list(args.point), w=list(args.w),
                              coefficients=list(coefficients))
    _emit(args, model, f"coefficients : ({_fmt(coefficients)})")
    return EXIT_OK


def cmd_uniqueness(args, config: Config, output: OutputManager) -> int:
    inst = _instance(args)
    unique = uniqueness_check(inst, args.l, config.max_unknowns)
    model = UniquenessModel(instance=inst.to_model(), l=args.l, degree=inst.delta(args.l), unique=unique)
    _emit(args, model, f"unique : {str(unique).lower()}")
    return EXIT_OK if unique else EXIT_FAILURE


def cmd_selftest(args, config: Config, output: OutputManager) -> int:
    if args.quick:
        config = config.with_quick_sweep()
    profile = "quick" if args.quick else "full"
    output.log(f"受け入れ検査を開始します（{profile}）")

    tracker = TimeTracker()
    results = CheckOrchestrator(config).run()
    for result in results.values():
        tracker.record(result.name, result.duration_seconds or 0.0)
        level = "info" if result.passed else "error"
        output.log(f"  - {result.name}: {'成功' if result.passed else '失敗'} ({result.cases}件)", level=level)

    aggregator = ResultAggregator()
    summary = aggregator.summarize(results)
    time_summary = tracker.get_summary()
    for item in time_summary["over_budget"]:
        output.log(f"実行時間の目安を超えました: {item['name']} {item['seconds']:.2f}秒", level="warning")
    output.log(f"総処理時間: {format_duration(tracker.elapsed())}")

    ordered = aggregator.ordered(results)
    report = {
        "summary": summary,
        "checks": ordered,
        "comparison": aggregator.create_comparison_table(results),
        "time_summary": time_summary,
    }
    output.save_result({**report, "checks": [r.to_dict() for r in ordered]}, command=f"selftest ({profile})")
    output.save_result_markdown(report, command=f"selftest ({profile})")

    model = SelftestModel(
        passed=summary["all_passed"],
        profile=profile,
        checks=[CheckModel(name=r.name, criterion=r.criterion, passed=r.passed, cases=r.cases,
                           failures=r.failures, error=r.error, duration_seconds=r.duration_seconds)
                for r in ordered],
    )
    if args.json:
        print(dump(model))
    else:
        print(aggregator.format_results(results))
        print(report["comparison"])
        tracker.print_summary()
        output.print_summary()
    return EXIT_OK if summary["all_passed"] else EXIT_FAILURE


COMMANDS: Dict[str, Callable[..., int]] = {
    "info": cmd_info,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "leading": cmd_leading,
    "det": cmd_det,
    "search": cmd_search,
    "reduce": cmd_reduce,
    "gamma": cmd_gamma,
    "audit": cmd_audit,
    "initial": cmd_initial,
    "uniqueness": cmd_uniqueness,
    "selftest": cmd_selftest,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """CLIエントリーポイント"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    config = Config.from_env()
    verbose = args.verbose or config.verbose
    if config.debug:
        logging.basicConfig(level=logging.DEBUG, format='%(asctime)s - %(levelname)s - %(message)s')

    save = args.command == "selftest" and config.save_output
    output = OutputManager(base_dir=args.out or config.output_dir, save=save, verbose=verbose)
    try:
        return COMMANDS[args.command](args, config, output)
    except SchemaError as e:
        output.log(f"入力エラー: {e}", level="error")
        print(json.dumps({"error": str(e), "location": e.location}, ensure_ascii=False), file=sys.stderr)
        return EXIT_USAGE
    except NotASolution as e:
        output.log(f"検証エラー: {e}", level="error")
        return EXIT_FAILURE
    except (FpkzError, ValueError, IndexError) as e:
        output.log(f"エラーが発生しました: {e}", level="error")
        if config.debug:
            output.log(f"スタックトレース:\n{traceback.format_exc()}", level="error")
        return EXIT_USAGE
    finally:
        output.close()


if __name__ == "__main__":
    sys.exit(main())
