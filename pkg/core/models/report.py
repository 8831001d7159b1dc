from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

SLACK_TOLERANCE = 1e-9

CSV_COLUMNS = ["name", "n", "eps", "q", "lhs", "rhs", "slack", "pass"]


def _get_str(data: dict, key: str, default: str = "") -> str:
	return str(data.get(key, default))


def _get_float(data: dict, key: str, default: float = 0.0) -> float:
	value = data.get(key, default)
	try:
		return float(value)
	except (TypeError, ValueError):
		return default


def _get_optional_float(data: dict, key: str) -> Optional[float]:
	value = data.get(key)
	if value is None:
		return None
	try:
		return float(value)
	except (TypeError, ValueError):
		return None


def _get_dict(data: dict, key: str) -> Dict[str, Any]:
	value = data.get(key, {})
	if isinstance(value, dict):
		return dict(value)
	return {}


def log2_gap(lhs: float, rhs: float) -> Optional[float]:
	"""log2(rhs) - log2(lhs) for positive sides, None otherwise."""
	if lhs > 0.0 and rhs > 0.0 and math.isfinite(lhs) and math.isfinite(rhs):
		return math.log2(rhs) - math.log2(lhs)
	return None


@dataclass(frozen=True)
class CheckReport:
	name: str
	params: Dict[str, Any]
	lhs: float
	rhs: float
	log2_slack: Optional[float] = None
	extras: Dict[str, Any] = field(default_factory=dict)

	@property
	def slack(self) -> float:
		return self.rhs - self.lhs

	@property
	def passed(self) -> bool:
		return self.slack >= -SLACK_TOLERANCE

	@property
	def scaled_slack(self) -> float:
		"""Slack used for suite statistics: log2 domain when available."""
		if self.log2_slack is not None:
			return self.log2_slack
		return self.slack

	def to_dict(self) -> Dict[str, Any]:
		return {
			"name": self.name,
			"params": dict(self.params),
			"lhs": self.lhs,
			"rhs": self.rhs,
			"slack": self.slack,
			"log2_slack": self.log2_slack,
			"pass": self.passed,
			"extras": dict(self.extras),
		}

	def to_csv_row(self) -> List[Any]:
		return [
			self.name,
			self.params.get("n", ""),
			self.params.get("eps", ""),
			self.params.get("q", ""),
			self.lhs,
			self.rhs,
			self.slack,
			self.passed,
		]

	@classmethod
	def from_dict(cls, data: dict) -> "CheckReport":
		return cls(
			name=_get_str(data, "name"),
			params=_get_dict(data, "params"),
			lhs=_get_float(data, "lhs"),
			rhs=_get_float(data, "rhs"),
			log2_slack=_get_optional_float(data, "log2_slack"),
			extras=_get_dict(data, "extras"),
		)


def make_report(
	name: str,
	params: Dict[str, Any],
	lhs: float,
	rhs: float,
	log_scale: bool = False,
	**extras: Any,
) -> CheckReport:
	return CheckReport(
		name=name,
		params=params,
		lhs=float(lhs),
		rhs=float(rhs),
		log2_slack=log2_gap(float(lhs), float(rhs)) if log_scale else None,
		extras=extras,
	)
