"""
Command-line front end for the Birkhoff slicing toolkit
Subcommands: basis, verify, vertices, volume
"""
import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

# Add the parent directory to the path to import core modules
current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
if parent_dir not in sys.path:
    sys.path.append(parent_dir)

from core.config import AppTexts, Config
from core.errors import PreconditionError, SlicerError, UsageError
from core.polytope_geometry import (
    VPolytope,
    birkhoff_polytope,
    build_lattice_chart,
    check_extreme,
    compute_edges,
    euclidean_volume,
    triangulation_oracle,
    volume_by_slicing,
)
from core.birkhoff_combinatorics import verify_lemma12, verify_negative_sum_bound
from core.rational_linalg import det_exact
from core.slicing_basis import (
    build_basis,
    slicing_vector,
    transformed_vertex_table,
    verify_general_position,
    verify_theorem4,
    verify_unimodular,
)
from core.utils import format_point, format_rational, load_polytope_file, setup_logging

logger = logging.getLogger(__name__)

VERIFIERS = {
    "theorem4": verify_theorem4,
    "lemma12": verify_lemma12,
    "bound": verify_negative_sum_bound,
    "unimodular": verify_unimodular,
    "genpos": verify_general_position,
}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


@dataclass
class RunReport:
    """Result of one CLI command; timing is kept out of the serialized payload"""
    command: str
    parameters: Dict[str, Any]
    result: Dict[str, Any]
    table: List[List[Any]] = field(default_factory=list)
    exit_status: int = EXIT_OK
    timing_ms: float = 0.0

    def to_json(self) -> str:
        payload = {"command": self.command, "parameters": self.parameters, "result": self.result}
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerows(self.table)
        return buffer.getvalue()

    def render(self, output_format: str) -> str:
        return self.to_csv() if output_format == "csv" else self.to_json()


def _check_supplied_edges(edges: Sequence[Sequence[int]], hull: Sequence[Sequence[int]]) -> None:
    """Supplied edges must be exactly the edges of the convex hull"""
    supplied = {tuple(sorted(e)) for e in edges}
    expected = {tuple(sorted(e)) for e in hull}
    missing = sorted(expected - supplied)
    if missing:
        raise PreconditionError(f"edge list is missing hull edge {missing[0]}", witness=missing[0])
    extra = sorted(supplied - expected)
    if extra:
        raise PreconditionError(f"pair {extra[0]} is not an edge of the convex hull", witness=extra[0])


class SlicerCLI:
    """Runs the subcommands and turns library results into RunReports"""

    def __init__(self, force: bool = False, max_workers: Optional[int] = None):
        self.force = force
        self.max_workers = max_workers

    def _check_range(self, command: str, n: int) -> None:
        low, high = Config.get_n_range(command)
        if n < low or (n > high and not self.force):
            raise UsageError(AppTexts.N_OUT_OF_RANGE.format(n=n, low=low, high=high, command=command))

    def cmd_basis(self, n: int) -> RunReport:
        """Ordered basis, its matrix form and determinant"""
        self._check_range("basis", n)
        b = build_basis(n)
        determinant = det_exact(b.matrix_form)
        rows = [[int(x) for x in row] for row in b.matrix_form.tolist()]

        table: List[List[Any]] = [["index", "family"] + [f"e{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]]
        for k, (family, row) in enumerate(zip(b.families, rows), start=1):
            table.append([k, family] + row)
        table.append(["determinant", format_rational(determinant)])

        result = {
            "n": n,
            "slicing_vector": [list(row) for row in slicing_vector(n).matrix()],
            "vectors": [
                {"index": k, "family": family, "matrix": [list(r) for r in vector]}
                for k, (family, vector) in enumerate(zip(b.families, b.vectors), start=1)
            ],
            "matrix_form": rows,
            "determinant": format_rational(determinant),
        }
        return RunReport("basis", {"n": n}, result, table)

    def cmd_verify(self, n: int, checks: Optional[Sequence[str]] = None) -> RunReport:
        """
        Run exhaustive verifications in canonical order.

        Every selected check is validated against its feasibility limit before any
        computation starts.
        """
        selected = list(checks) if checks else list(Config.available_checks())
        for check in selected:
            if check not in VERIFIERS:
                raise UsageError(AppTexts.UNKNOWN_CHECK.format(check=check, choices=", ".join(Config.available_checks())))
        if n < 2:
            raise UsageError(AppTexts.N_OUT_OF_RANGE.format(n=n, low=2, high=max(Config.CHECK_LIMITS.values()), command="verify"))
        for check in selected:
            limit = Config.get_check_limit(check)
            if n > limit and not self.force:
                raise UsageError(AppTexts.CHECK_INFEASIBLE.format(check=check, limit=limit, n=n))

        ordered = [check for check in Config.available_checks() if check in selected]
        reports: Dict[str, Dict[str, Any]] = {}
        table: List[List[Any]] = [["check", "n", "passed", "details"]]
        for check in ordered:
            report = VERIFIERS[check](n)
            reports[check] = report
            message = AppTexts.VERIFY_PASSED if report["passed"] else AppTexts.VERIFY_FAILED
            logger.info(message.format(check=check))
            details = {k: v for k, v in report.items() if k not in ("check", "n", "passed")}
            table.append([check, n, report["passed"], json.dumps(details, sort_keys=True, separators=(",", ":"))])

        passed = all(report["passed"] for report in reports.values())
        return RunReport(
            "verify",
            {"n": n, "checks": ordered},
            {"n": n, "passed": passed, "checks": reports},
            table,
            EXIT_OK if passed else EXIT_FAILED,
        )

    def cmd_vertices(self, n: int, transformed: bool = False) -> RunReport:
        """Vertex table of B_n, optionally in the slicing basis"""
        self._check_range("vertices", n)
        rows = transformed_vertex_table(n, transformed=transformed)
        header = ["sigma"] + [f"x{k}" for k in range(1, n * n + 1)] + ["slicing_coordinate"]
        table: List[List[Any]] = [header]
        for row in rows:
            table.append([" ".join(map(str, row["sigma"]))] + row["coordinates"] + [row["slicing_coordinate"]])
        result = {"n": n, "transformed": transformed, "vertex_count": len(rows), "vertices": rows}
        return RunReport("vertices", {"n": n, "transformed": transformed}, result, table)

    def _load_target(self, n: Optional[int], input_path: Optional[str]):
        if n is None and input_path is None:
            raise UsageError(AppTexts.MISSING_TARGET)
        if n is not None and input_path is not None:
            raise UsageError(AppTexts.BOTH_TARGETS)
        if n is not None:
            self._check_range("volume", n)
            return birkhoff_polytope(n), list(slicing_vector(n).vectorize()), {"kind": "birkhoff", "n": n}

        data = load_polytope_file(input_path)
        vertices = data["vertices"]
        extreme = check_extreme(vertices)
        for index, is_vertex in enumerate(extreme):
            if not is_vertex:
                raise PreconditionError(
                    f"point {index} ({', '.join(format_point(vertices[index]))}) is not a vertex of the convex hull",
                    witness=index,
                )
        hull = compute_edges(vertices)
        edges = data["edges"]
        if edges is None:
            edges = hull
            logger.info(f"Computed {len(edges)} edges from the convex hull")
        else:
            _check_supplied_edges(edges, hull)
        functional = [1] + [0] * (data["dimension"] - 1)
        target = {"kind": "file", "path": input_path, "vertex_count": len(vertices)}
        return VPolytope.from_points(vertices, edges), functional, target

    def cmd_volume(
        self,
        n: Optional[int] = None,
        input_path: Optional[str] = None,
        method: str = Config.DEFAULT_METHOD,
    ) -> RunReport:
        """Normalized volume by slicing, by the triangulation oracle, or both"""
        if method not in Config.VOLUME_METHODS:
            raise UsageError(f"unknown method '{method}'; choose from {', '.join(Config.VOLUME_METHODS)}")
        polytope, functional, target = self._load_target(n, input_path)

        result: Dict[str, Any] = {
            "target": target,
            "method": method,
            "dimension": polytope.affine_dimension,
            "ambient_dimension": polytope.ambient_dimension,
        }
        table: List[List[Any]] = [["level", "volume", "slice_vertices"]]
        sliced: Optional[Fraction] = None
        oracle: Optional[Fraction] = None

        if method in ("slice", "both"):
            chart = build_lattice_chart(polytope, functional)
            sliced, records = volume_by_slicing(polytope, chart, max_workers=self.max_workers)
            euclid = euclidean_volume(sliced, chart)
            result["slice"] = {
                "total": format_rational(sliced),
                "euclidean_total": None if euclid is None else format_rational(euclid),
                "levels": [
                    {"level": r.level, "volume": format_rational(r.volume), "slice_vertices": len(r.slice.vertices)}
                    for r in records
                ],
            }
            for r in records:
                table.append([r.level, format_rational(r.volume), len(r.slice.vertices)])
            table.append(["total", format_rational(sliced), ""])

        if method in ("oracle", "both"):
            oracle = triangulation_oracle(polytope)
            result["oracle"] = {"total": format_rational(oracle)}
            table.append(["oracle", format_rational(oracle), ""])

        status = EXIT_OK
        if method == "both":
            equal = sliced == oracle
            result["equal"] = equal
            if equal:
                logger.info(AppTexts.VOLUMES_EQUAL.format(value=format_rational(sliced)))
            else:
                logger.error(AppTexts.VOLUMES_DIFFER.format(sliced=format_rational(sliced), oracle=format_rational(oracle)))
                status = EXIT_FAILED

        parameters = {"method": method, "n": n, "input": input_path}
        return RunReport("volume", parameters, result, table, status)

    def dispatch(self, args: argparse.Namespace) -> RunReport:
        if args.command == "basis":
            return self.cmd_basis(args.n)
        if args.command == "verify":
            checks = [c.strip() for c in args.checks.split(",") if c.strip()] if args.checks else None
            return self.cmd_verify(args.n, checks)
        if args.command == "vertices":
            return self.cmd_vertices(args.n, transformed=args.transformed)
        return self.cmd_volume(args.n, args.input, args.method)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=Config.OUTPUT_FORMATS, default=Config.DEFAULT_FORMAT, help="Output format")
    common.add_argument("--force", action="store_true", help="Lift the feasibility caps on n (long runtimes)")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=Config.DEFAULT_LOG_LEVEL,
        help="Logging level for diagnostics on stderr",
    )

    parser = argparse.ArgumentParser(prog=AppTexts.APP_TITLE, description=AppTexts.APP_DESCRIPTION)
    sub = parser.add_subparsers(dest="command", required=True)

    basis = sub.add_parser("basis", parents=[common], help="Print the slicing basis of B_n")
    basis.add_argument("--n", type=int, required=True, help="Order of the Birkhoff polytope")

    verify = sub.add_parser("verify", parents=[common], help="Run exhaustive verifications")
    verify.add_argument("--n", type=int, required=True, help="Order of the Birkhoff polytope")
    verify.add_argument(
        "--checks",
        default=None,
        help=f"Comma-separated subset of {','.join(Config.available_checks())} (default: all)",
    )

    vertices = sub.add_parser("vertices", parents=[common], help="Print the vertex table of B_n")
    vertices.add_argument("--n", type=int, required=True, help="Order of the Birkhoff polytope")
    vertices.add_argument("--transformed", action="store_true", help="Use the slicing basis coordinates")

    volume = sub.add_parser("volume", parents=[common], help="Normalized volume by slicing and/or triangulation")
    volume.add_argument("--n", type=int, default=None, help="Birkhoff polytope B_n as the target")
    volume.add_argument("--input", default=None, help="JSON polytope file as the target")
    volume.add_argument("--method", choices=Config.VOLUME_METHODS, default=Config.DEFAULT_METHOD)
    volume.add_argument("--workers", type=int, default=None, help="Threads for evaluating slice levels")
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Parse arguments, run one command and write its report to stdout"""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    setup_logging(args.log_level)
    cli = SlicerCLI(force=args.force, max_workers=getattr(args, "workers", None))

    start = time.perf_counter()
    try:
        report = cli.dispatch(args)
    except UsageError as e:
        print(f"{AppTexts.APP_TITLE}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as e:
        print(AppTexts.PRECONDITION_FAILED.format(message=e), file=sys.stderr)
        return EXIT_USAGE
    except (SlicerError, FileNotFoundError) as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE

    report.timing_ms = (time.perf_counter() - start) * 1000.0
    logger.info(f"{report.command} finished in {report.timing_ms:.1f} ms")
    stdout.write(report.render(args.format))
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
