#!/usr/bin/env python3
"""
Report I/O

Parsing of polygon corpora and serialization of measurement and verification
results to JSON and CSV. CSV column orders are frozen: downstream plotting
depends on them.
"""

import csv
import json
import math
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import numpy as np

from .bounds import BoundsReport
from .entities import CurvatureBand, InputFormatError, Verdict
from .polygon import ConvexPolygon, HypothesisFlags, VertexCurvatureReport

logger = logging.getLogger(__name__)

REPORT_COLUMNS = (
    "n",
    "k",
    "k1",
    "k2",
    "rho",
    "r",
    "R",
    "r_bound",
    "R_bound_dimensional",
    "R_bound_as_written",
    "gap_bound",
    "verdict",
)

VERTEX_COLUMNS = ("polygon", "index", "alpha", "l_prev", "l_next", "kappaA", "kappaB", "flag")


def parse_json(text: str) -> Any:
    """
    Parse JSON text.

    Raises:
        InputFormatError: With the line and column of the syntax error
    """
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"invalid JSON: {e.msg}", line=e.lineno, offset=e.colno) from e


def load_polygons(text: str) -> List[ConvexPolygon]:
    """
    Read polygons from a corpus document.

    Accepts either a corpus object {"polygons": [...]} or a bare array of
    polygon records {"k": ..., "vertices": [[u, v], ...]}.

    Raises:
        InputFormatError: If the document or a record is malformed
    """
    data = parse_json(text)
    if isinstance(data, dict):
        data = data.get("polygons")
    if not isinstance(data, list):
        raise InputFormatError("expected a list of polygons or an object with a 'polygons' list")
    polygons = []
    for i, record in enumerate(data):
        if not isinstance(record, dict):
            raise InputFormatError(f"polygon {i}: expected an object, got {type(record).__name__}")
        try:
            polygons.append(ConvexPolygon.from_dict(record))
        except InputFormatError:
            raise
        except ValueError as e:
            raise InputFormatError(f"polygon {i}: {e}") from e
    return polygons


def _cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, Verdict):
        return value.value
    return value


def report_row(report: BoundsReport) -> Dict[str, Any]:
    """One CSV row of a verification report."""
    return {
        "n": report.n,
        "k": report.k,
        "k1": report.band.k1,
        "k2": report.band.k2,
        "rho": report.rho,
        "r": report.r,
        "R": report.R,
        "r_bound": report.r_bound,
        "R_bound_dimensional": report.R_bound_dimensional,
        "R_bound_as_written": report.R_bound_as_written,
        "gap_bound": report.gap_bound,
        "verdict": report.verdict,
    }


def write_report_csv(reports: Iterable[BoundsReport], stream: TextIO) -> None:
    """Write verification reports in REPORT_COLUMNS order."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for report in reports:
        row = report_row(report)
        writer.writerow([_cell(row[c]) for c in REPORT_COLUMNS])


def vertex_rows(
    report: VertexCurvatureReport, flags: Optional[HypothesisFlags] = None, polygon_index: int = 0
) -> List[Dict[str, Any]]:
    """Per-vertex rows; `flag` is empty without hypothesis flags."""
    rows = []
    for v in report.vertices:
        rows.append(
            {
                "polygon": polygon_index,
                "index": v.index,
                "alpha": v.alpha,
                "l_prev": v.l_prev,
                "l_next": v.l_next,
                "kappaA": v.kappa_a,
                "kappaB": v.kappa_b,
                "flag": None if flags is None else flags.vertex_flags[v.index],
            }
        )
    return rows


def write_vertex_csv(rows: Iterable[Dict[str, Any]], stream: TextIO) -> None:
    """Write per-vertex rows in VERTEX_COLUMNS order."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(VERTEX_COLUMNS)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in VERTEX_COLUMNS])


def slack_histogram(values: Sequence[float], bins: int = 10) -> Dict[str, List[float]]:
    """Histogram of non-negative bound slacks as {"edges": [...], "counts": [...]}."""
    finite = [v for v in values if math.isfinite(v)]
    if not finite:
        return {"edges": [], "counts": []}
    counts, edges = np.histogram(finite, bins=bins)
    return {"edges": edges.tolist(), "counts": counts.tolist()}


def get_statistics(reports: Sequence[BoundsReport], bins: int = 10) -> Dict[str, Any]:
    """
    Summary of a verification run.

    Returns:
        Dictionary with totals, counts per verdict, the smallest margin of every
        checked inequality and a histogram of the inradius slack r_bound - r
    """
    by_verdict = {v.value: 0 for v in Verdict}
    if not reports:
        return {"total": 0, "by_verdict": by_verdict, "min_margins": {}, "slack_histogram": slack_histogram([])}

    min_margins: Dict[str, float] = {}
    slacks = []
    for report in reports:
        by_verdict[report.verdict.value] += 1
        for name, margin in report.margins.items():
            min_margins[name] = min(margin, min_margins.get(name, math.inf))
        if report.verdict is not Verdict.SKIPPED:
            slacks.append(report.margins["inradius"])

    return {
        "total": len(reports),
        "by_verdict": by_verdict,
        "min_margins": dict(sorted(min_margins.items())),
        "slack_histogram": slack_histogram(slacks, bins),
    }


def verification_document(
    reports: Sequence[BoundsReport], band: CurvatureBand, rho: float, bins: int = 10
) -> Dict[str, Any]:
    """JSON document of a verification run: parameters, one record per polygon, summary."""
    return {
        "band": band.to_dict(),
        "rho": rho,
        "reports": [r.to_dict() for r in reports],
        "summary": get_statistics(reports, bins),
    }


def _json_safe(value: Any) -> Any:
    """Replace non-finite floats by the strings "inf", "-inf" and "nan"."""
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return {key: _json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(item) for item in value]
    return value


def dumps(document: Any) -> str:
    """
    Serialize a report document deterministically as strict JSON.

    Unbounded radii and margins are written as the string "inf".
    """
    return json.dumps(_json_safe(document), indent=2, allow_nan=False) + "\n"
