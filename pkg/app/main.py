from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from app.core.app_logging import enable_stderr_logging, setup_logging
from app.core.arithmetic import is_prime, jacobi, legendre, parse_place, parse_rational, parse_slope
from app.core.cyclotomic import approx_complex, set_order_limit
from app.core.errors import InputError, ReciprocityError, UsageError
from app.core.finite_schrodinger import epsilon, gauss_sum
from app.core.hilbert_symbol import hilbert, support
from app.core.maslov import kappa, kashiwara_form, triple_phase
from app.core.reciprocity_engine import quadratic_reciprocity
from app.core.report_writer import render_qr_table, render_reports
from app.core.settings_service import SettingsService
from app.core.verification_suites import run_laws
from app.core.weil_index import defect, weil_index
from app.models.dto import LAWS
from app.models.entities import LagrangianTriple, Place
from app.models.settings import OUTPUT_FORMATS, VerifierSettings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reciprocity",
        description="ヒルベルト記号・Weil 指数・ガウス和を厳密計算し、相互法則を検証します。",
    )
    parser.add_argument("--settings", help="設定ファイル (settings.json) のパス")
    parser.add_argument("--log-dir", help="ログ出力先ディレクトリ")
    parser.add_argument("--verbose", action="store_true", help="ログを標準エラーにも出力する")
    commands = parser.add_subparsers(dest="command", required=True)

    command = commands.add_parser("legendre", help="ルジャンドル記号 (a/p)")
    command.add_argument("a", type=int)
    command.add_argument("p", type=int)

    command = commands.add_parser("jacobi", help="ヤコビ記号 (a/c)")
    command.add_argument("a", type=int)
    command.add_argument("c", type=int)

    command = commands.add_parser("hilbert", help="ヒルベルト記号 <a,b>_v")
    command.add_argument("a")
    command.add_argument("b")
    _add_place_options(command)

    command = commands.add_parser("weil", help="Weil 指数 gamma_v(a)")
    command.add_argument("a")
    _add_place_options(command)

    command = commands.add_parser("defect", help="Maslov 欠損 mu_v(a,b)")
    command.add_argument("a")
    command.add_argument("b")
    _add_place_options(command)

    for name, summary in (
        ("kashiwara", "柏原形式の係数"),
        ("kappa", "実符号 kappa"),
        ("phase", "三つ組の位相 gamma_v(q_T)"),
    ):
        command = commands.add_parser(name, help=summary)
        command.add_argument("slopes", nargs=3, metavar="SLOPE")
        if name == "phase":
            command.add_argument("--place", required=True)

    command = commands.add_parser("gauss", help="ガウス和 G(a,c)")
    command.add_argument("a", type=int)
    command.add_argument("c", type=int)
    command.add_argument("--approx", action="store_true", help="複素数近似も表示する")

    command = commands.add_parser("epsilon", help="epsilon_c")
    command.add_argument("c", type=int)

    command = commands.add_parser("verify", help="検証スイートを実行する")
    command.add_argument("law", help=f"{', '.join(LAWS)}, all のいずれか")
    command.add_argument("--max", dest="maximum", type=int)
    command.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS)
    command.add_argument("--jobs", type=int)

    command = commands.add_parser("report", help="表を出力する")
    command.add_argument("table", choices=("qr-table",))
    command.add_argument("--max", dest="maximum", type=int, default=30)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return int(exc.code or 0)

    settings = SettingsService(args.settings).load()
    log_path = setup_logging(args.log_dir or settings.log_dir or None)
    if args.verbose:
        enable_stderr_logging()
    set_order_limit(settings.cyclotomic_order_limit)
    logger.info("Command %s started (log file: %s)", args.command, log_path)

    try:
        return _dispatch(args, settings)
    except (UsageError, InputError) as exc:
        logger.warning("Rejected input for %s: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ReciprocityError as exc:
        logger.warning("Domain error in %s: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def _dispatch(args: argparse.Namespace, settings: VerifierSettings) -> int:
    command = args.command
    if command == "legendre":
        _emit(legendre(args.a, args.p))
    elif command == "jacobi":
        _emit(jacobi(args.a, args.c))
    elif command in {"hilbert", "defect"}:
        a, b = parse_rational(args.a), parse_rational(args.b)
        evaluate = hilbert if command == "hilbert" else defect
        _emit_per_place(args, lambda v: evaluate(a, b, v), support(a, b))
    elif command == "weil":
        a = parse_rational(args.a)
        _emit_per_place(args, lambda v: weil_index(a, v), support(a, 1))
    elif command in {"kashiwara", "kappa", "phase"}:
        triple = LagrangianTriple(*(parse_slope(text) for text in args.slopes))
        if command == "kashiwara":
            _emit(kashiwara_form(triple))
        elif command == "kappa":
            _emit(kappa(triple))
        else:
            _emit(triple_phase(triple, parse_place(args.place)))
    elif command == "gauss":
        value = gauss_sum(args.a, args.c)
        _emit(value)
        if args.approx:
            approx = approx_complex(value)
            digits = settings.approx_digits
            # Adding 0.0 turns a rounded -0.0 into 0.0.
            real, imag = round(approx.real, digits) + 0.0, round(approx.imag, digits) + 0.0
            _emit(f"~ {real:.{digits}f}{imag:+.{digits}f}i")
    elif command == "epsilon":
        _emit(epsilon(args.c))
    elif command == "verify":
        return _verify(args, settings)
    elif command == "report":
        return _qr_table(args.maximum)
    return EXIT_OK


def _verify(args: argparse.Namespace, settings: VerifierSettings) -> int:
    jobs = args.jobs if args.jobs is not None else settings.default_jobs
    if jobs < 1:
        raise UsageError(f"--jobs は 1 以上を指定してください: {jobs}")
    output_format = args.output_format or settings.output_format
    reports = run_laws(args.law, maximum=args.maximum, jobs=jobs)
    sys.stdout.write(render_reports(reports, output_format))
    passed = all(report.passed for report in reports)
    logger.info("Verify %s finished: %s", args.law, "PASS" if passed else "FAIL")
    return EXIT_OK if passed else EXIT_FAILURE


def _qr_table(maximum: int) -> int:
    if maximum < 5:
        raise UsageError(f"--max は 5 以上を指定してください: {maximum}")
    primes = [n for n in range(3, maximum) if is_prime(n)]
    records = [quadratic_reciprocity(p, q) for p in primes for q in primes if p < q]
    sys.stdout.write(render_qr_table(records))
    return EXIT_OK


def _add_place_options(command: argparse.ArgumentParser) -> None:
    group = command.add_mutually_exclusive_group(required=True)
    group.add_argument("--place", help="inf または素数")
    group.add_argument("--all-places", action="store_true", help="台に含まれる全素点で評価する")


def _emit_per_place(args: argparse.Namespace, evaluate, places: list[Place]) -> None:
    if not args.all_places:
        _emit(evaluate(parse_place(args.place)))
        return
    for place in places:
        _emit(f"{place}: {evaluate(place)}")


def _emit(value: object) -> None:
    print(value)


if __name__ == "__main__":
    raise SystemExit(main())
