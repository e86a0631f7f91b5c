"""
Командная строка: gen | build | verify | stats | export.

JSON (статистика, отчёты) — в stdout, статусные сообщения — в stderr.
Коды выхода: 0 — успех, 1 — найдены нарушения, 2 — ошибка ввода.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from app.application.use_cases.build import build_with_stats, spanner_stats
from app.application.use_cases.generate import KINDS, generate_points
from app.application.use_cases.verify import verify_spanner
from app.config import BuildConfig, configure_logging, settings
from app.domain.exceptions import SpannerError
from app.domain.services.checks import CHECKS
from app.infrastructure.files.point_files import dump_points, load_metric
from app.infrastructure.files.spanner_files import read_spanner, spanner_to_csv, spanner_to_dot, write_spanner

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INPUT = 2


def _status(message: str) -> None:
    print(message, file=sys.stderr)


def _emit(payload: dict, out: Optional[str] = None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def _add_build_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eps", type=float, default=None, help=f"stretch parameter in (0, 1/2), default {settings.default_eps}")
    parser.add_argument("--k", type=int, default=None, help=f"number of tolerated vertex faults, default {settings.default_k}")
    parser.add_argument("--dim", type=float, default=None, help="doubling dimension used by the bounds")
    parser.add_argument("--seed", type=int, default=None)


def _config(args) -> BuildConfig:
    return BuildConfig.create(eps=args.eps, k=args.k, dim=args.dim, seed=args.seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spanners", description="Fault-tolerant light spanners for doubling metrics")
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a point fixture")
    gen.add_argument("--kind", choices=KINDS, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--dim", type=int, default=2)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output file (.csv or .json)")

    build = sub.add_parser("build", help="build a spanner from a point file")
    build.add_argument("--in", dest="input", required=True)
    _add_build_flags(build)
    build.add_argument("--validate", action="store_true", help="check the triangle inequality of matrix input")
    build.add_argument("--out", required=True, help="spanner file (.csv or .dot)")
    build.add_argument("--stats", default=None, help="also write the stats JSON here")
    build.add_argument("--nets-out", default=None, help="write the colored net hierarchy as JSON {level: {color: [points]}}")

    verify = sub.add_parser("verify", help="verify a spanner against its point file")
    verify.add_argument("--points", required=True)
    verify.add_argument("--spanner", required=True)
    _add_build_flags(verify)
    verify.add_argument("--validate", action="store_true")
    verify.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--jobs", type=int, default=None)
    verify.add_argument("--check", action="append", default=[], choices=sorted(CHECKS), help="run a named check (repeatable)")
    verify.add_argument("--report", default=None, help="also write the report JSON here")

    stats = sub.add_parser("stats", help="print stats JSON for an existing spanner")
    stats.add_argument("--points", required=True)
    stats.add_argument("--spanner", required=True)
    _add_build_flags(stats)
    stats.add_argument("--validate", action="store_true")

    export = sub.add_parser("export", help="convert a spanner CSV to CSV or DOT")
    export.add_argument("--spanner", required=True)
    export.add_argument("--format", choices=("csv", "dot"), default="dot")
    export.add_argument("--out", required=True)
    return parser


def run_gen(args) -> int:
    points = generate_points(args.kind, args.n, args.dim, args.seed)
    dump_points(points, args.out)
    _status(f"✅ {args.n} points written to {args.out}")
    return EXIT_OK


def run_build(args) -> int:
    cfg = _config(args)
    ms = load_metric(args.input, check_triangle=args.validate or settings.validate_triangle)
    result, stats = build_with_stats(ms, cfg)
    write_spanner(result.spanner, args.out)
    _status(f"✅ spanner with {len(result.spanner)} edges written to {args.out}")
    if args.nets_out:
        Path(args.nets_out).write_text(json.dumps(result.nets.to_debug_json(), indent=2))
        _status(f"✅ nets written to {args.nets_out}")
    _emit(stats, args.stats)
    return EXIT_OK


def run_verify(args) -> int:
    cfg = _config(args)
    ms = load_metric(args.points, check_triangle=args.validate or settings.validate_triangle)
    spanner = read_spanner(args.spanner)
    report = verify_spanner(
        spanner, ms, cfg, mode=args.mode, trials=args.trials,
        seed=cfg.seed, jobs=args.jobs, checks=args.check,
    )
    _emit(report.to_dict(), args.report)
    if not report.ok:
        _status(f"❌ {len(report.violations)} violations, first: {report.violations[0].detail}")
        return EXIT_VIOLATIONS
    _status(f"✅ max stretch {report.max_stretch:.6f} over {report.failure_sets} failure sets")
    return EXIT_OK


def run_stats(args) -> int:
    cfg = _config(args)
    ms = load_metric(args.points, check_triangle=args.validate or settings.validate_triangle)
    spanner = read_spanner(args.spanner)
    if spanner.n != ms.n:
        _status(f"❌ spanner has {spanner.n} vertices but the point file has {ms.n} points")
        return EXIT_INPUT
    _emit(spanner_stats(spanner, ms, cfg, 0.0))
    return EXIT_OK


def run_export(args) -> int:
    spanner = read_spanner(args.spanner)
    text = spanner_to_dot(spanner) if args.format == "dot" else spanner_to_csv(spanner)
    Path(args.out).write_text(text)
    _status(f"✅ exported {len(spanner)} edges to {args.out}")
    return EXIT_OK


COMMANDS = {
    "gen": run_gen,
    "build": run_build,
    "verify": run_verify,
    "stats": run_stats,
    "export": run_export,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except (SpannerError, OSError) as e:
        _status(f"❌ {e}")
        return EXIT_INPUT
