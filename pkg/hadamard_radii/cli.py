#!/usr/bin/env python3
"""
hadamard-radii CLI

Command-line interface for generating polygon corpora and checking them
against the radius bounds.

Usage:
    hadamard-radii gen --k1 1 --k2 0.5 --rho 0.5 --size 100 --seed 7 --out corpus.json
    hadamard-radii measure corpus.json --csv vertices.csv
    hadamard-radii verify corpus.json --k1 1 --k2 0.5 --rho 0.5 --csv report.csv
    hadamard-radii round corpus.json --rho 0.5 --k1 1 --k2 0.5 --eps 0.01,0.001
    hadamard-radii surface --profile blended --k1 1 --k2 0.5 --size 5
    hadamard-radii --version

Exit status:
    0  every verdict passed or was skipped
    1  some verdict failed
    2  input error

Examples:
    $ hadamard-radii gen --size 2 --seed 1 | hadamard-radii verify - --k1 1 --k2 0.5 --rho 0.5
    {
      "band": {"k1": 1.0, "k2": 0.5, "strict": false},
      ...
      "summary": {"total": 2, "by_verdict": {"pass": 2, "fail": 0, "skipped": 0}, ...}
    }
"""

import argparse
import io
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import TYPE_CHECKING, List, Optional, Tuple

if TYPE_CHECKING:
    from .bounds import BoundsReport

logger = logging.getLogger(__name__)


def _pair(text: str, cast=float) -> Tuple:
    try:
        lo, hi = (cast(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    return lo, hi


def _int_pair(text: str) -> Tuple[int, int]:
    return _pair(text, int)


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _emit(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)


def _verify_record(job: tuple) -> "BoundsReport":
    """Verify one polygon record; runs in worker processes."""
    from .bounds import verify_theorem2
    from .entities import CurvatureBand, CurvatureDefinition, Ln2Variant
    from .polygon import ConvexPolygon

    record, band, rho, variant, definition = job
    report = verify_theorem2(
        ConvexPolygon.from_dict(record),
        CurvatureBand.from_dict(band),
        rho,
        Ln2Variant(variant),
        CurvatureDefinition(definition),
    )
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hadamard-radii",
        description="Inradius and circumradius bounds for convex polygons in negatively curved surfaces",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  hadamard-radii gen --k1 1 --k2 0.5 --rho 0.5 --size 100 --seed 7 --out corpus.json
  hadamard-radii verify corpus.json --k1 1 --k2 0.5 --rho 0.5
  hadamard-radii round corpus.json --rho 0.5 --k1 1 --k2 0.5 --eps 0.01,0.001
  hadamard-radii surface --profile blended --k1 1 --k2 0.5
        """,
    )
    parser.add_argument("--version", "-v", action="store_true", help="Show version and exit")
    parser.add_argument("--verbose", "-V", action="store_true", help="Log debug output to stderr")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # gen command
    gen = subparsers.add_parser(
        "gen",
        help="Generate a random polygon corpus",
        description="Generate seeded random convex polygons, optionally filtered by the hypotheses",
    )
    gen.add_argument("--k1", type=float, default=1.0, help="Lower curvature bound scale (default: 1)")
    gen.add_argument("--k2", type=float, default=0.5, help="Upper curvature bound scale (default: 0.5)")
    gen.add_argument("--rho", type=float, default=0.5, help="Radius parameter (default: 0.5)")
    gen.add_argument("--size", type=int, default=100, help="Number of polygons (default: 100)")
    gen.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    gen.add_argument("--k", type=float, default=None, help="Fixed model curvature scale")
    gen.add_argument("--n", type=_int_pair, default=(3, 8), help="Vertex count range LO:HI (default: 3:8)")
    gen.add_argument(
        "--radius", type=_pair, default=(0.08, 0.28), help="Circumscribing radius range LO:HI"
    )
    gen.add_argument("--no-hypotheses", action="store_true", help="Keep polygons failing the hypotheses")
    gen.add_argument("--definition", choices=["A", "B"], default="A", help="Vertex curvature definition")
    gen.add_argument("--out", "-o", default=None, help="Output file (default: stdout)")

    # measure command
    measure = subparsers.add_parser(
        "measure",
        help="Measure radii and vertex curvatures",
        description="Compute inradius, circumradius and vertex curvatures of every polygon",
    )
    measure.add_argument("input", help="Corpus JSON file, or - for stdin")
    measure.add_argument("--k1", type=float, default=None, help="Scale for the tanh-weighted curvature")
    measure.add_argument("--k2", type=float, default=None, help="Upper curvature bound scale")
    measure.add_argument("--rho", type=float, default=None, help="Radius parameter for vertex flags")
    measure.add_argument("--csv", default=None, help="Write per-vertex rows to this CSV file")
    measure.add_argument("--out", "-o", default=None, help="Output file (default: stdout)")

    # verify command
    verify = subparsers.add_parser(
        "verify",
        help="Check polygons against the radius bounds",
        description="Measure every polygon and compare with the bounds; exit 1 if any verdict fails",
    )
    verify.add_argument("input", help="Corpus JSON file, or - for stdin")
    verify.add_argument("--k1", type=float, required=True, help="Lower curvature bound scale")
    verify.add_argument("--k2", type=float, required=True, help="Upper curvature bound scale")
    verify.add_argument("--rho", type=float, required=True, help="Radius parameter")
    verify.add_argument(
        "--variant",
        choices=["dimensional", "as-written"],
        default="dimensional",
        help="Prefactor of the ln 2 term (default: dimensional)",
    )
    verify.add_argument("--definition", choices=["A", "B"], default="A", help="Vertex curvature definition")
    verify.add_argument("--strict", action="store_true", help="Treat the upper curvature bound as strict (-k2² > K)")
    verify.add_argument("--workers", type=int, default=1, help="Worker processes (default: 1)")
    verify.add_argument("--csv", default=None, help="Write one row per polygon to this CSV file")
    verify.add_argument("--bins", type=int, default=10, help="Slack histogram bins (default: 10)")
    verify.add_argument("--out", "-o", default=None, help="Output file (default: stdout)")

    # round command
    rnd = subparsers.add_parser(
        "round",
        help="Round polygon corners with arcs",
        description="Build the arc chain of one polygon and report the convexity conditions",
    )
    rnd.add_argument("input", help="Corpus JSON file, or - for stdin")
    rnd.add_argument("--rho", type=float, required=True, help="Arc radius")
    rnd.add_argument("--k1", type=float, required=True, help="Lower curvature bound scale")
    rnd.add_argument("--k2", type=float, required=True, help="Upper curvature bound scale")
    rnd.add_argument("--eps", type=_float_list, default=[0.01, 0.001], help="Parallel distances (default: 0.01,0.001)")
    rnd.add_argument("--index", type=int, default=0, help="Polygon index in the corpus (default: 0)")
    rnd.add_argument("--definition", choices=["A", "B"], default="A", help="Vertex curvature definition")
    rnd.add_argument("--strict", action="store_true", help="Treat the upper curvature bound as strict (-k2² > K)")
    rnd.add_argument("--out", "-o", default=None, help="Output file (default: stdout)")

    # surface command
    surface = subparsers.add_parser(
        "surface",
        help="Check geodesic polygons on a rotationally symmetric surface",
        description="Measure geodesic polygons on a warped surface and check the curvature inequality",
    )
    surface.add_argument("scenario", nargs="?", default=None, help="Scenario JSON file")
    surface.add_argument("--profile", choices=["sinh", "blended"], default="blended", help="Surface profile")
    surface.add_argument("--k1", type=float, default=1.0, help="Lower curvature bound scale (default: 1)")
    surface.add_argument("--k2", type=float, default=0.5, help="Upper curvature bound scale (default: 0.5)")
    surface.add_argument("--rho", type=float, default=0.5, help="Radius parameter (default: 0.5)")
    surface.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    surface.add_argument("--size", type=int, default=5, help="Random polygons without a scenario (default: 5)")
    surface.add_argument("--out", "-o", default=None, help="Output file (default: stdout)")
    return parser


def cmd_gen(parsed: argparse.Namespace) -> int:
    from .corpus import GeneratorConfig, generate_corpus
    from .entities import CurvatureDefinition

    config = GeneratorConfig(
        k1=parsed.k1,
        k2=parsed.k2,
        rho=parsed.rho,
        size=parsed.size,
        seed=parsed.seed,
        k=parsed.k,
        n_range=parsed.n,
        radius_range=parsed.radius,
        hypotheses=not parsed.no_hypotheses,
        definition=CurvatureDefinition(parsed.definition),
    )
    _emit(generate_corpus(config).to_json() + "\n", parsed.out)
    return 0


def cmd_measure(parsed: argparse.Namespace) -> int:
    from . import measure
    from .entities import CurvatureBand
    from .polygon import check_theorem2_hypotheses, vertex_curvature_B, vertex_curvature_A
    from .reports import dumps, load_polygons, vertex_rows, write_vertex_csv

    polygons = load_polygons(_read_input(parsed.input))
    results, rows = [], []
    for i, polygon in enumerate(polygons):
        result = measure(polygon, parsed.k1)
        flags = None
        if parsed.k1 is not None and parsed.k2 is not None and parsed.rho is not None:
            flags = check_theorem2_hypotheses(polygon, CurvatureBand(parsed.k1, parsed.k2), parsed.rho)
            result["hypotheses"] = flags.to_dict()
        results.append(result)
        curvature = vertex_curvature_A(polygon) if parsed.k1 is None else vertex_curvature_B(polygon, parsed.k1)
        rows.extend(vertex_rows(curvature, flags, i))
    if parsed.csv:
        buffer = io.StringIO()
        write_vertex_csv(rows, buffer)
        _emit(buffer.getvalue(), parsed.csv)
    _emit(dumps(results), parsed.out)
    return 0


def cmd_verify(parsed: argparse.Namespace) -> int:
    from .entities import CurvatureBand, DomainError, Verdict
    from .reports import dumps, load_polygons, verification_document, write_report_csv

    if not parsed.rho > 0:
        raise DomainError(f"rho must be positive, got {parsed.rho}")
    polygons = load_polygons(_read_input(parsed.input))
    band = CurvatureBand(parsed.k1, parsed.k2, strict=parsed.strict)
    jobs = [(p.to_dict(), band.to_dict(), parsed.rho, parsed.variant, parsed.definition) for p in polygons]
    if parsed.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parsed.workers) as pool:
            reports = list(pool.map(_verify_record, jobs))
    else:
        reports = [_verify_record(job) for job in jobs]

    document = verification_document(reports, band, parsed.rho, parsed.bins)
    if parsed.csv:
        buffer = io.StringIO()
        write_report_csv(reports, buffer)
        _emit(buffer.getvalue(), parsed.csv)
    _emit(dumps(document), parsed.out)

    summary = document["summary"]
    logger.info("verified %d polygons: %s", summary["total"], summary["by_verdict"])
    return 1 if any(r.verdict is Verdict.FAIL for r in reports) else 0


def cmd_round(parsed: argparse.Namespace) -> int:
    from . import round_corners
    from .entities import CurvatureBand, CurvatureDefinition, InputFormatError
    from .reports import dumps, load_polygons

    polygons = load_polygons(_read_input(parsed.input))
    if not 0 <= parsed.index < len(polygons):
        raise InputFormatError(f"polygon index {parsed.index} out of range (corpus has {len(polygons)})")
    document = round_corners(
        polygons[parsed.index],
        parsed.rho,
        CurvatureBand(parsed.k1, parsed.k2, strict=parsed.strict),
        parsed.eps,
        CurvatureDefinition(parsed.definition),
    )
    _emit(dumps(document), parsed.out)
    return 0


def cmd_surface(parsed: argparse.Namespace) -> int:
    import numpy as np

    from .entities import CurvatureBand, Verdict
    from .reports import dumps, parse_json
    from .surface import load_scenario, make_profile, random_surface_polygon, verify_surface_polygon

    band = CurvatureBand(parsed.k1, parsed.k2)
    if parsed.scenario:
        profile, polygons = load_scenario(parse_json(_read_input(parsed.scenario)))
    else:
        params = {"k": parsed.k1} if parsed.profile == "sinh" else {"k1": parsed.k1, "k2": parsed.k2}
        profile = make_profile(parsed.profile, **params)
        rng = np.random.default_rng(parsed.seed)
        polygons = [random_surface_polygon(profile, rng) for _ in range(parsed.size)]

    certificate = profile.pinching_certificate(band, r_max=min(profile.working_radius, 3.0))
    if not certificate.ok:
        logger.warning(
            "profile curvature range [%.6g, %.6g] leaves the band", certificate.min_curvature, certificate.max_curvature
        )
    reports = [verify_surface_polygon(profile, vertices, band, parsed.rho) for vertices in polygons]
    document = {
        "profile": profile.to_dict(),
        "band": band.to_dict(),
        "rho": parsed.rho,
        "pinching": {
            "min_curvature": certificate.min_curvature,
            "max_curvature": certificate.max_curvature,
            "ok": certificate.ok,
        },
        "polygons": [r.to_dict() for r in reports],
    }
    _emit(dumps(document), parsed.out)
    return 1 if any(r.verdict is Verdict.FAIL for r in reports) else 0


COMMANDS = {
    "gen": cmd_gen,
    "measure": cmd_measure,
    "verify": cmd_verify,
    "round": cmd_round,
    "surface": cmd_surface,
}


def main(args: Optional[list] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    parsed = parser.parse_args(args)

    # Handle version
    if parsed.version:
        from . import __version__

        print(f"hadamard-radii {__version__}")
        return 0

    # Handle no command
    if not parsed.command:
        parser.print_help()
        return 2

    logging.basicConfig(
        level=logging.DEBUG if parsed.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    # Import here to avoid slow startup for --help
    from .entities import HadamardRadiiError

    try:
        return COMMANDS[parsed.command](parsed)
    except (HadamardRadiiError, OSError) as e:
        print(f"hadamard-radii {parsed.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
