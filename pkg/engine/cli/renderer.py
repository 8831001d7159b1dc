from __future__ import annotations

import json
import sys
from typing import Any, Dict, Iterable, TextIO

from core.models.report import CheckReport

PREFIX = "[cube-bounds]"


def fmt_human(value: float) -> str:
    return f"{value:.12g}"


def emit_json_line(record: Dict[str, Any], stream: TextIO | None = None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")


def render_note(tag: str, message: str, stream: TextIO | None = None) -> None:
    stream = stream or sys.stderr
    print(f"{PREFIX}[{tag}] {message}", file=stream)


def render_error(message: str, stream: TextIO | None = None) -> None:
    render_note("error", message, stream)


def render_check_summary(reports: Iterable[CheckReport], stream: TextIO | None = None) -> None:
    stream = stream or sys.stderr
    reports = list(reports)
    failed = [report for report in reports if not report.passed]
    render_note("check", f"{len(reports) - len(failed)}/{len(reports)} passed", stream)
    for report in failed:
        print(
            f"- {report.name} {_compact_params(report.params)} slack={fmt_human(report.slack)}",
            file=stream,
        )


def render_suite_summary(report: Dict[str, Any], stream: TextIO | None = None) -> None:
    stream = stream or sys.stderr
    render_note("suite", "passed" if report.get("passed") else "FAILED", stream)
    for name, stats in sorted(report.get("checks", {}).items()):
        min_slack = stats.get("min_slack")
        shown = "-" if min_slack is None else fmt_human(float(min_slack))
        print(f"- {name}: {stats.get('passed', 0)}/{stats.get('total', 0)} min_slack={shown}", file=stream)

    dominance = report.get("dominance", {})
    if dominance:
        gap = dominance.get("max_log2_gap")
        constant = dominance.get("min_log_sobolev_constant")
        print(f"- dominance: max_log2_gap={'-' if gap is None else fmt_human(gap)}", file=stream)
        print(f"- log_sobolev: min_constant={'-' if constant is None else fmt_human(constant)}", file=stream)

    for kind, rows in sorted(report.get("trends", {}).items()):
        slacks = ", ".join(f"n={row['n']}:{fmt_human(row['slack'])}" for row in rows)
        print(f"- trend[{kind}]: {slacks}", file=stream)

    boundary = report.get("mgl_boundary", {})
    if boundary.get("rows"):
        worst = max(abs(row["slope_at_zero"] - row["expected_slope"]) for row in boundary["rows"])
        print(f"- mgl_boundary: holds={boundary.get('holds')} max_slope_error={fmt_human(worst)}", file=stream)


def _compact_params(params: Dict[str, Any]) -> str:
    keys = ["n", "size", "eps", "q"]
    return " ".join(f"{key}={params[key]}" for key in keys if key in params)
