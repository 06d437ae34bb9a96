"""GJPS Homology - command line entry point.

Commands:
    analyze <file> [--json out.json] [--max-grade N] [--dump-dir DIR]
    verify  <file> [--max-grade N]
    series  <file> --i {0..3} [--max-grade N] [--cohomology]
    milnor  <file>

Exit codes: 0 success, 1 a verification failed (or an unexpected error),
2 malformed input, 3 a hypothesis of the requested mode does not hold.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.graded_linalg import GradeLimitError, dump_matrix, operator_matrix
from src.core.homology_engine import HomologyEngine, closed_form_series, is_quadratic_case, series_from_sequences
from src.core.poisson import SECTION6, HypothesisError
from src.core.poly import ArityError, Polynomial, WeightSystem, weight_degree
from src.core.poly_parser import PolynomialSyntaxError
from src.core.problem import ProblemSpec, ProblemSpecError, build_structure, load_problem
from src.core.report import build_report
from src.core.singularity import NON_ISOLATED, milnor_number, singularity_ring
from src.utils.config import APP_NAME, APP_VERSION, load_settings
from src.utils.logger import get_logger, set_log_level

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3


def _progress(current: int, total: int, status: str) -> None:
    logger.debug(f"[{current}/{total}] {status}")


def _load(args: argparse.Namespace) -> ProblemSpec:
    spec = load_problem(args.file)
    if getattr(args, "max_grade", None) is not None:
        spec = spec.with_max_grade(args.max_grade)
    return spec


def _workers(args: argparse.Namespace) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    return int(load_settings()["engine"]["max_workers"])


def cmd_analyze(args: argparse.Namespace) -> int:
    spec = _load(args)
    structure = build_structure(spec)
    engine = HomologyEngine(structure, spec.max_grade, _progress, _workers(args))
    report = build_report(spec, structure, engine=engine)

    sys.stdout.write(report.render_tables())
    if args.json:
        Path(args.json).write_text(report.to_json(), encoding="utf-8")
        logger.info(f"JSON report written to {args.json}")

    if args.dump_dir:
        directory = Path(args.dump_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for job in engine.computed_slices():
            m = operator_matrix(job.op, job.grade, structure)
            suffix = f"m{-job.grade}" if job.grade < 0 else str(job.grade)
            (directory / f"{job.op}_{suffix}.txt").write_text(dump_matrix(m), encoding="utf-8")
        logger.info(f"Dumped {len(engine.computed_slices())} slices to {directory}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    spec = _load(args)
    structure = build_structure(spec)
    engine = HomologyEngine(structure, spec.max_grade, _progress, _workers(args))
    report = build_report(spec, structure, engine=engine)

    sys.stdout.write(report.render_verdicts())
    failed = report.failed
    if failed:
        sys.stderr.write(f"{len(failed)} check(s) failed: {', '.join(v.name for v in failed)}\n")
        return EXIT_FAILED
    return EXIT_OK


def cmd_series(args: argparse.Namespace) -> int:
    spec = _load(args)
    structure = build_structure(spec)
    engine = HomologyEngine(structure, spec.max_grade, _progress, _workers(args))
    i = args.i

    if args.cohomology:
        computed = engine.cohomology_dims(i)
        print(f"PH^{i} (X-grading, from grade {computed.offset}): {computed.to_list()}")
        return EXIT_OK

    grades = range(0, spec.max_grade + 1)
    computed = engine.homology_dims(i, grades)
    print(f"PH_{i} computed: {computed.to_list()}")
    derived = series_from_sequences(i, structure)
    print(f"PH_{i} sequence: {derived.expand(len(grades))}  = {derived}")
    if is_quadratic_case(structure):
        printed = closed_form_series(i)
        print(f"PH_{i} printed:  {printed.expand(len(grades))}  = {printed}")
    return EXIT_OK


def cmd_milnor(args: argparse.Namespace) -> int:
    spec = load_problem(args.file)
    weights = WeightSystem(spec.weights)
    casimir = spec.casimir
    if casimir.is_zero():
        raise HypothesisError("nonzero", "P must be nonzero")
    if not weight_degree(casimir, weights).homogeneous:
        raise HypothesisError("homogeneity", f"P = {casimir} is not weight homogeneous for {weights}")
    mu = milnor_number(casimir, weights)
    print(f"P = {casimir}, weights = {weights}")
    print(f"milnor number: {mu}")
    if mu != NON_ISOLATED:
        ring = singularity_ring(casimir, weights)
        print(f"basis: {', '.join(str(Polynomial.monomial(m)) for m in ring.basis)}")
        print(f"graded dims: {list(ring.quotient_dims)}")
    if spec.mode == SECTION6:
        structure = build_structure(spec)
        planar = structure.planar
        assert planar is not None
        print(f"P~ = {planar.casimir.to_string(('x', 'y'))}, r = {planar.r}, c = {planar.c}")
        print(f"planar milnor number: {milnor_number(planar.casimir, planar.weights)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gjps-homology",
        description="Exact Poisson homology and cohomology of generalized Jacobian Poisson structures.",
    )
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress at INFO level")
    parser.add_argument("--debug", action="store_true", help="log every slice at DEBUG level")
    parser.add_argument("--workers", type=int, default=None, help="worker processes for slice ranks")

    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="full report for a problem file")
    analyze.add_argument("file")
    analyze.add_argument("--json", metavar="OUT", help="also write the JSON report to OUT")
    analyze.add_argument("--max-grade", type=int, dest="max_grade")
    analyze.add_argument("--dump-dir", metavar="DIR", dest="dump_dir", help="write every computed slice matrix")
    analyze.set_defaults(handler=cmd_analyze)

    verify = sub.add_parser("verify", help="PASS/FAIL line per automated check")
    verify.add_argument("file")
    verify.add_argument("--max-grade", type=int, dest="max_grade")
    verify.set_defaults(handler=cmd_verify)

    series = sub.add_parser("series", help="computed and closed-form Poincare series")
    series.add_argument("file")
    series.add_argument("--i", type=int, choices=range(4), required=True)
    series.add_argument("--max-grade", type=int, dest="max_grade")
    series.add_argument("--cohomology", action="store_true", help="PH^i instead of PH_i")
    series.set_defaults(handler=cmd_series)

    milnor = sub.add_parser("milnor", help="Milnor number and singularity basis")
    milnor.add_argument("file")
    milnor.set_defaults(handler=cmd_milnor)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Command line entry point; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    if args.debug:
        set_log_level("DEBUG")
    elif args.verbose:
        set_log_level("INFO")

    logger.info(f"Starting {APP_NAME} v{APP_VERSION}: {args.command} {args.file}")
    try:
        return args.handler(args)
    except HypothesisError as e:
        sys.stderr.write(f"Hypothesis check failed: {e.check}\n{e}\n")
        return EXIT_HYPOTHESIS
    except (ProblemSpecError, PolynomialSyntaxError, ArityError, GradeLimitError) as e:
        sys.stderr.write(f"Invalid input: {e}\n")
        return EXIT_INPUT
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        sys.stderr.write(f"Error: {e}\n")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
