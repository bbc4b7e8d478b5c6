import logging
import sys
from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser, Namespace
from collections.abc import Sequence
from pathlib import Path

import msgspec
from rich.console import Console

from application.defaults import (
    DEFAULT_BUDGET,
    DEFAULT_CERT_DIR,
    DEFAULT_DISABLE_OTEL,
    DEFAULT_HEURISTIC,
    DEFAULT_MAX_NORM_SQ,
    DEFAULT_METRICS_FILE,
    DEFAULT_OTEL_ENDPOINT,
    DEFAULT_REPORT,
    DEFAULT_SCAN_RADIUS,
    DEFAULT_THREADS,
)
from application.pipeline import (
    RunContext,
    check_cert_stage,
    classify_stage,
    corroborate_stage,
    enumerate_shortest_stage,
    lemma24_stages,
    lower_bound_stage,
    prove_boost_stages,
    prove_forbidden_stage,
    render_stage,
    run_all,
    verify_periodic_stage,
)
from application.reports import Report, Stage, encode_report, print_report
from application.telemetry import get_tracer, initialize_tracing, shutdown_tracing
from cert.version_policy import ENGINE_VERSION
from com.exceptions import (
    InvalidPatchError,
    InvalidSpecError,
    LatticeSpannerError,
    PreconditionError,
    UnknownPatternError,
)
from paths import parse_point
from prover import Heuristic, SearchSettings, write_metrics

logger = logging.getLogger('lattice_spanners')

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# errors caused by the input rather than by the search
USAGE_ERRORS = (
    UnknownPatternError,
    PreconditionError,
    InvalidPatchError,
    InvalidSpecError,
    msgspec.DecodeError,
    OSError,
)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="lattice-spanners",
        description="Prove and check dilation bounds for degree-3 plane spanners of Z^2",
        formatter_class=ArgumentDefaultsHelpFormatter,
    )
    _ = parser.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="Maximum number of search nodes per proof",
    )
    _ = parser.add_argument(
        "--scan-radius",
        type=int,
        default=DEFAULT_SCAN_RADIUS,
        help="Chebyshev radius around the current vertices scanned for close pairs",
    )
    _ = parser.add_argument(
        "--heuristic",
        choices=[h.value for h in Heuristic],
        default=DEFAULT_HEURISTIC,
        help="Branching pair selection",
    )
    _ = parser.add_argument(
        "--emit-cert",
        type=Path,
        default=DEFAULT_CERT_DIR,
        help="Directory to write proof certificates to",
    )
    _ = parser.add_argument(
        "--report",
        choices=['text', 'json'],
        default=DEFAULT_REPORT,
        help="Report format written to stdout",
    )
    _ = parser.add_argument(
        "--threads",
        type=int,
        default=DEFAULT_THREADS,
        help="Worker threads for the first branching level and certificate replay",
    )
    _ = parser.add_argument(
        "--log-level",
        type=str,
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
        default='WARNING',
        help="Log level",
    )
    _ = parser.add_argument(
        "--recursion-limit",
        type=int,
        default=sys.getrecursionlimit(),
        help="Recursion limit",
    )
    _ = parser.add_argument(
        "--metrics-file",
        type=Path,
        default=DEFAULT_METRICS_FILE,
        help="Write Prometheus metrics in text format to this file on exit",
    )
    _ = parser.add_argument(
        "--otel-endpoint",
        type=str,
        default=DEFAULT_OTEL_ENDPOINT,
        help="OpenTelemetry OTLP gRPC endpoint for stage spans (e.g., http://localhost:4317)",
    )
    _ = parser.add_argument(
        "--disable-otel",
        action='store_true',
        default=DEFAULT_DISABLE_OTEL,
        help="Whether to disable OTEL.",
    )
    _ = parser.add_argument(
        "--version",
        action='version',
        version=f"%(prog)s {ENGINE_VERSION}",
    )

    commands = parser.add_subparsers(dest='command', required=True)

    cmd = commands.add_parser("verify-periodic", help="Check local optimality of a periodic graph")
    _ = cmd.add_argument("spec", help="Spec file or built-in name (fig2-left, ..., fig3)")

    cmd = commands.add_parser("lower-bound", help="Check the unit-neighbour tightness witnesses")
    _ = cmd.add_argument("spec", help="Spec file or built-in name")

    _ = commands.add_parser("lemma24", help="Check the H-graph distance lemma")
    _ = commands.add_parser("enumerate-shortest", help="Enumerate the boost path classes")

    prove = commands.add_parser("prove", help="Run a refutation search")
    which = prove.add_subparsers(dest='target', required=True)
    cmd = which.add_parser("forbidden", help="Show that a pattern cannot occur")
    _ = cmd.add_argument("--pattern", required=True, help="Pattern id (h1 or h2)")
    _ = which.add_parser("boost", help="Refute each stored shortest path class")

    cmd = commands.add_parser(
        "corroborate-short-edges", help="Try to refute single long edges up to a norm"
    )
    _ = cmd.add_argument(
        "--max-norm-sq",
        type=int,
        default=DEFAULT_MAX_NORM_SQ,
        help="Largest squared edge length to try",
    )

    cmd = commands.add_parser("check-cert", help="Replay a certificate")
    _ = cmd.add_argument("file", type=Path)

    cmd = commands.add_parser("render", help="Draw a proof state as SVG")
    _ = cmd.add_argument("state", help="State file or bundled state name (fig6-1 to fig6-4)")
    _ = cmd.add_argument("-o", "--output", type=Path, required=True)

    cmd = commands.add_parser("classify", help="Classify one close pair against an edge list")
    _ = cmd.add_argument("edges", type=Path, help="Edge list file, one 'x1 y1 x2 y2' per line")
    _ = cmd.add_argument("p", type=parse_point, help="First point as x,y")
    _ = cmd.add_argument("q", type=parse_point, help="Second point as x,y")

    _ = commands.add_parser("all", help="Run every stage in order, stopping at the first failure")
    return parser


def parse_args(argv: Sequence[str] | None = None) -> Namespace:
    return build_parser().parse_args(argv)


def _command_name(args: Namespace) -> str:
    target = getattr(args, 'target', None)
    return f"{args.command} {target}" if target else args.command


def _dispatch(ctx: RunContext, args: Namespace) -> list[Stage]:
    match args.command:
        case 'verify-periodic':
            return [verify_periodic_stage(ctx, args.spec)]
        case 'lower-bound':
            return [lower_bound_stage(ctx, args.spec)]
        case 'lemma24':
            return lemma24_stages(ctx)
        case 'enumerate-shortest':
            return [enumerate_shortest_stage(ctx)]
        case 'prove' if args.target == 'forbidden':
            return [prove_forbidden_stage(ctx, args.pattern)]
        case 'prove':
            return list(prove_boost_stages(ctx))
        case 'corroborate-short-edges':
            return [corroborate_stage(ctx, args.max_norm_sq)]
        case 'check-cert':
            return [check_cert_stage(ctx, args.file)]
        case 'render':
            return [render_stage(ctx, args.state, args.output)]
        case 'classify':
            return [classify_stage(ctx, args.edges, args.p, args.q)]
        case 'all':
            return run_all(ctx)
    raise AssertionError(f"unhandled command {args.command!r}")


def _emit(report: Report, fmt: str) -> None:
    if fmt == 'json':
        sys.stdout.buffer.write(encode_report(report))
        sys.stdout.flush()
    else:
        print_report(report, Console())


def run(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    args = parse_args(argv)

    logging.basicConfig(
        level=args.log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    sys.setrecursionlimit(args.recursion_limit)

    tracing = bool(args.otel_endpoint) and not args.disable_otel
    if tracing:
        initialize_tracing("lattice-spanners", args.otel_endpoint)

    command = _command_name(args)
    try:
        settings = SearchSettings(
            budget=args.budget,
            scan_radius=args.scan_radius,
            heuristic=Heuristic(args.heuristic),
            threads=args.threads,
        )
        ctx = RunContext(
            settings=settings,
            tracer=get_tracer(__name__, tracing),
            cert_dir=args.emit_cert,
        )
        stages = _dispatch(ctx, args)
    except USAGE_ERRORS as e:
        logger.debug("usage error", exc_info=True)
        _emit(Report(command, False, [], error=str(e)), args.report)
        return EXIT_USAGE
    except LatticeSpannerError as e:
        logger.exception("%s failed", command)
        _emit(Report(command, False, [], error=str(e)), args.report)
        return EXIT_FAILED
    finally:
        if args.metrics_file is not None:
            write_metrics(args.metrics_file)
        if tracing:
            shutdown_tracing()

    ok = bool(stages) and all(s.ok for s in stages)
    _emit(Report(command, ok, stages), args.report)
    return EXIT_OK if ok else EXIT_FAILED


def main_sync():
    sys.exit(run())


if __name__ == "__main__":
    main_sync()
