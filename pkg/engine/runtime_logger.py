from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

from core.models.report import CheckReport
from util.logger import append_jsonl, current_layout


def _utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


class RuntimeCheckLogger:
    """Appends every CheckReport a CLI command evaluates and keeps per-check tallies."""

    def __init__(self, run_id: str, log_dir: Optional[str | Path] = None) -> None:
        self.run_id = run_id
        self.log_dir = Path(log_dir) if log_dir is not None else current_layout().runs
        self._path = self.log_dir / f"{self.run_id}_checks.jsonl"
        self._tallies: Dict[str, Dict[str, Any]] = {}

    def log_check(self, report: CheckReport, **context: Any) -> None:
        payload: Dict[str, Any] = report.to_dict()
        payload.update(context)
        payload.setdefault("run_id", self.run_id)
        payload.setdefault("timestamp", _utc_now_iso())
        append_jsonl(self._path, payload)

        tally = self._tallies.setdefault(report.name, {"passed": 0, "failed": 0, "min_slack": None})
        tally["passed" if report.passed else "failed"] += 1
        if tally["min_slack"] is None or report.scaled_slack < tally["min_slack"]:
            tally["min_slack"] = report.scaled_slack

    def summary(self) -> Dict[str, Any]:
        return {
            "checks_logged": sum(t["passed"] + t["failed"] for t in self._tallies.values()),
            "checks": {name: dict(tally) for name, tally in sorted(self._tallies.items())},
        }

    @property
    def path(self) -> Path:
        return self._path
