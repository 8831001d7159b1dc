from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, TextIO

from core.errors import InputFormatError
from core.models.report import CSV_COLUMNS, CheckReport

TREND_COLUMNS = ["kind", "n", "slack", "achieved", "target", "entropy_rate"]


def _open_for_write(path: str | Path):
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        return target.open("w", encoding="utf-8", newline="")
    except OSError as exc:
        raise InputFormatError(f"Cannot write '{target}': {exc}", {"path": str(target)}) from exc


def write_reports_jsonl(reports: Iterable[CheckReport], stream: TextIO) -> int:
    count = 0
    for report in reports:
        stream.write(json.dumps(report.to_dict(), sort_keys=True, ensure_ascii=False) + "\n")
        count += 1
    return count


def export_reports_jsonl(reports: Iterable[CheckReport], path: str | Path) -> int:
    with _open_for_write(path) as handle:
        return write_reports_jsonl(reports, handle)


def write_reports_csv(reports: Iterable[CheckReport], stream: TextIO) -> int:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    count = 0
    for report in reports:
        writer.writerow([_cell(value) for value in report.to_csv_row()])
        count += 1
    return count


def export_reports_csv(reports: Iterable[CheckReport], path: str | Path) -> int:
    with _open_for_write(path) as handle:
        return write_reports_csv(reports, handle)


def write_rows_csv(columns: Sequence[str], rows: Iterable[Dict[str, Any]], stream: TextIO) -> int:
    writer = csv.DictWriter(stream, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    count = 0
    for row in rows:
        writer.writerow({key: _cell(row.get(key)) for key in columns})
        count += 1
    return count


def export_rows_csv(columns: Sequence[str], rows: Iterable[Dict[str, Any]], path: str | Path) -> int:
    with _open_for_write(path) as handle:
        return write_rows_csv(columns, rows, handle)


def trend_rows(trends: Dict[str, List[Dict[str, Any]]]) -> List[Dict[str, Any]]:
    rows: List[Dict[str, Any]] = []
    for kind in sorted(trends):
        for row in trends[kind]:
            rows.append({"kind": kind, **row})
    return rows


def export_trend_csv(trends: Dict[str, List[Dict[str, Any]]], path: str | Path) -> int:
    return export_rows_csv(TREND_COLUMNS, trend_rows(trends), path)


def _cell(value: Any) -> Any:
    # repr keeps 17 significant digits where needed and never depends on locale
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return value
