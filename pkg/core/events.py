from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Mapping
from uuid import uuid4

from core.enums import EventType
from core.errors import CubeError
from core.models.report import CheckReport

FAILURE_TYPES = frozenset({EventType.CHECK_FAILED, EventType.ERROR})


def _get_str(data: dict, key: str, default: str = "") -> str:
	return str(data.get(key, default))


def _get_dict(data: dict, key: str) -> Dict[str, Any]:
	value = data.get(key, {})
	if isinstance(value, dict):
		return value
	return {}


def _utc_now_iso() -> str:
	return datetime.now(timezone.utc).isoformat()


@dataclass
class Event:
	type: EventType
	name: str
	payload: Dict[str, Any] = field(default_factory=dict)
	source: str = "engine"
	timestamp: str = field(default_factory=_utc_now_iso)
	event_id: str = field(default_factory=lambda: str(uuid4()))

	@property
	def is_failure(self) -> bool:
		return self.type in FAILURE_TYPES

	def to_dict(self) -> dict:
		return {
			"event_id": self.event_id,
			"type": self.type.value,
			"name": self.name,
			"source": self.source,
			"timestamp": self.timestamp,
			"payload": self.payload,
		}

	@classmethod
	def from_dict(cls, data: dict) -> "Event":
		return cls(
			type=EventType(_get_str(data, "type", EventType.ERROR.value)),
			name=_get_str(data, "name"),
			payload=_get_dict(data, "payload"),
			source=_get_str(data, "source", "engine"),
			timestamp=_get_str(data, "timestamp", _utc_now_iso()),
			event_id=_get_str(data, "event_id", str(uuid4())),
		)

	@classmethod
	def check(cls, report: CheckReport, source: str = "suite", **extra_payload: Any) -> "Event":
		payload: Dict[str, Any] = {
			"check": report.name,
			"params": dict(report.params),
			"slack": report.slack,
			"log2_slack": report.log2_slack,
		}
		payload.update(extra_payload)
		event_type = EventType.CHECK_EVALUATED if report.passed else EventType.CHECK_FAILED
		return cls(type=event_type, name=report.name, payload=payload, source=source)

	@classmethod
	def cell(cls, n: int, model: str, failed: int, source: str = "suite") -> "Event":
		return cls(
			type=EventType.CELL_COMPLETED,
			name="cell_completed",
			payload={"n": n, "model": model, "failed": failed},
			source=source,
		)

	@classmethod
	def trend(cls, slacks: Mapping[str, List[float]], source: str = "suite") -> "Event":
		payload: Dict[str, Any] = {kind: list(values) for kind, values in slacks.items()}
		return cls(type=EventType.TREND_COMPUTED, name="trend_computed", payload=payload, source=source)

	@classmethod
	def failure(cls, exc: CubeError, source: str = "cli") -> "Event":
		"""Error event carrying the error code as its name."""
		return cls(type=EventType.ERROR, name=exc.code, payload=exc.to_dict(), source=source)


def create_event(
	event_type: EventType,
	name: str,
	payload: Dict[str, Any] | None = None,
	source: str = "engine",
) -> Event:
	return Event(
		type=event_type,
		name=name,
		payload=payload or {},
		source=source,
	)
