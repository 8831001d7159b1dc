from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List

from core.bounds import evaluate_check
from core.cube import CubeFunction
from core.errors import InputFormatError
from core.models.report import CheckReport

REPLAY_TOL = 1e-12


@dataclass(frozen=True)
class ReplaySummary:
    total_witnesses: int
    replayed: int
    mismatched: int
    max_deviation: float


def _optional_float(value: Any) -> float | None:
    return None if value is None else float(value)


def replay_witness(witness: Dict[str, Any]) -> CheckReport:
    if not isinstance(witness, dict) or "check" not in witness or "function" not in witness:
        raise InputFormatError("witness needs 'check' and 'function'")
    function_data = witness["function"]
    if not isinstance(function_data, dict):
        raise InputFormatError("witness 'function' must be an object")
    f = CubeFunction.from_dict(function_data)
    return evaluate_check(
        str(witness["check"]),
        f,
        eps=_optional_float(witness.get("eps")),
        q=_optional_float(witness.get("q")),
    )


def replay_deviation(witness: Dict[str, Any]) -> float:
    report = replay_witness(witness)
    recorded = witness.get("slack")
    if recorded is None:
        return math.inf
    return abs(report.scaled_slack - float(recorded))


def replay_matches(witness: Dict[str, Any], tol: float = REPLAY_TOL) -> bool:
    return replay_deviation(witness) <= tol


def collect_witnesses(report: Dict[str, Any]) -> List[Dict[str, Any]]:
    witnesses: List[Dict[str, Any]] = []
    checks = report.get("checks", {}) if isinstance(report.get("checks", {}), dict) else {}
    for name in sorted(checks):
        witness = checks[name].get("witness") if isinstance(checks[name], dict) else None
        if isinstance(witness, dict):
            witnesses.append(witness)
    failures = report.get("failures", [])
    if isinstance(failures, list):
        witnesses.extend(item for item in failures if isinstance(item, dict))
    return witnesses


def replay_suite_report(path: str | Path, tol: float = REPLAY_TOL) -> ReplaySummary:
    source = Path(path)
    try:
        report = json.loads(source.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"Cannot load suite report '{source}': {exc}", {"path": str(source)}) from exc
    if not isinstance(report, dict):
        raise InputFormatError(f"suite report '{source}' must be a JSON object")

    witnesses = collect_witnesses(report)
    mismatched = 0
    max_deviation = 0.0
    for witness in witnesses:
        deviation = replay_deviation(witness)
        max_deviation = max(max_deviation, deviation)
        if deviation > tol:
            mismatched += 1

    return ReplaySummary(
        total_witnesses=len(witnesses),
        replayed=len(witnesses),
        mismatched=mismatched,
        max_deviation=max_deviation,
    )
