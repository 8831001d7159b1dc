from __future__ import annotations

import json
import os
import traceback
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, Optional
from uuid import uuid4

from core.events import Event

DEFAULT_LOG_ROOT = Path(__file__).resolve().parent.parent / "logs"


def _utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


def append_jsonl(path: Path, record: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def _write_json(path: Path, record: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        json.dump(record, fh, indent=2, ensure_ascii=False)


@dataclass(frozen=True)
class LogLayout:
    """Directory layout under one log root: events/, runs/ and errors/."""

    root: Path

    @property
    def events(self) -> Path:
        return self.root / "events"

    @property
    def runs(self) -> Path:
        return self.root / "runs"

    @property
    def errors(self) -> Path:
        return self.root / "errors"


def current_layout() -> LogLayout:
    # CUBE_LOG_DIR is read per logger so a .env loaded at startup still applies
    configured = os.getenv("CUBE_LOG_DIR", "").strip()
    return LogLayout(Path(configured) if configured else DEFAULT_LOG_ROOT)


# Event Logger
class EventLogger:

    def __init__(self, run_id: str, layout: Optional[LogLayout] = None) -> None:
        self.run_id = run_id
        self._path = (layout or current_layout()).events / f"{run_id}.jsonl"
        self._seq = 0

    def log(self, event: Event) -> None:
        self._seq += 1
        record = event.to_dict()
        record["run_id"] = self.run_id
        record["seq"] = self._seq
        append_jsonl(self._path, record)

    def log_many(self, events: Iterable[Event]) -> None:
        for event in events:
            self.log(event)

    @property
    def path(self) -> Path:
        return self._path


# Run Logger
@dataclass
class RunRecord:
    run_id: str
    command: str = ""
    started_at: str = field(default_factory=_utc_now_iso)
    ended_at: Optional[str] = None
    config: Dict[str, Any] = field(default_factory=dict)
    outcome: Optional[str] = None  # passed | failed | error
    summary_stats: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "run_id": self.run_id,
            "command": self.command,
            "started_at": self.started_at,
            "ended_at": self.ended_at,
            "config": self.config,
            "outcome": self.outcome,
            "summary_stats": self.summary_stats,
            "metadata": self.metadata,
        }


class RunLogger:
    """One JSON document per CLI run, rewritten after every change."""

    def __init__(self, run_id: Optional[str] = None, command: str = "", layout: Optional[LogLayout] = None) -> None:
        self.run_id = run_id or str(uuid4())
        self._path = (layout or current_layout()).runs / f"{self.run_id}.json"
        self._record = RunRecord(run_id=self.run_id, command=command)
        self._flush()

    def set_config(self, config: Dict[str, Any]) -> None:
        self._record.config = dict(config)
        self._flush()

    def update_stats(self, stats: Dict[str, Any]) -> None:
        self._record.summary_stats.update(stats)
        self._flush()

    def end_run(
        self,
        outcome: str,
        summary_stats: Optional[Dict[str, Any]] = None,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> None:
        self._record.ended_at = _utc_now_iso()
        self._record.outcome = outcome
        self._record.summary_stats.update(summary_stats or {})
        self._record.metadata.update(metadata or {})
        self._flush()

    def _flush(self) -> None:
        _write_json(self._path, self._record.to_dict())

    @property
    def path(self) -> Path:
        return self._path

    @property
    def record(self) -> RunRecord:
        return self._record


# Error Log
class ErrorLogger:

    def __init__(self, run_id: Optional[str] = None, layout: Optional[LogLayout] = None) -> None:
        errors_dir = (layout or current_layout()).errors
        self.run_id = run_id
        self._global_path = errors_dir / "errors.jsonl"
        self._run_path: Optional[Path] = errors_dir / f"{run_id}.jsonl" if run_id else None

    def log(
        self,
        message: str,
        error_type: str = "error",
        exc: Optional[BaseException] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        record: Dict[str, Any] = {
            "error_id": str(uuid4()),
            "run_id": self.run_id,
            "error_type": error_type,
            "message": message,
            "timestamp": _utc_now_iso(),
            "traceback": "".join(traceback.format_exception(type(exc), exc, exc.__traceback__)) if exc else None,
            "context": context or {},
        }
        append_jsonl(self._global_path, record)
        if self._run_path is not None:
            append_jsonl(self._run_path, record)

    def log_exc(
        self,
        exc: BaseException,
        message: str = "",
        error_type: str = "exception",
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Record an exception; CubeError subclasses contribute their code and context."""
        code = getattr(exc, "code", None)
        merged = dict(getattr(exc, "context", {}) or {})
        merged.update(context or {})
        self.log(
            message=message or str(exc),
            error_type=code if isinstance(code, str) else error_type,
            exc=exc,
            context=merged,
        )

    @property
    def global_path(self) -> Path:
        return self._global_path

    @property
    def run_path(self) -> Optional[Path]:
        return self._run_path
