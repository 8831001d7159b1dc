from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict

from core.enums import MaximumKind
from core.errors import DomainError


@dataclass(frozen=True)
class LevelPoint:
	alpha: float
	nu: float

	def __post_init__(self) -> None:
		if not (0.0 <= self.alpha <= 1.0) or not (-1.0 <= self.nu <= 1.0):
			raise DomainError(
				f"level point ({self.alpha}, {self.nu}) outside [0,1] x [-1,1]",
				{"alpha": self.alpha, "nu": self.nu},
			)

	def to_dict(self) -> Dict[str, float]:
		return {"alpha": self.alpha, "nu": self.nu}

	@classmethod
	def from_dict(cls, data: dict) -> "LevelPoint":
		return cls(alpha=float(data.get("alpha", 0.0)), nu=float(data.get("nu", 0.0)))


@dataclass(frozen=True)
class OmegaDomain:
	q: float
	N: float

	def __post_init__(self) -> None:
		if math.isnan(self.q) or self.q <= 1.0:
			raise DomainError(f"q must exceed 1, got {self.q}", {"q": self.q})
		if not (0.0 < self.N <= (self.q - 1.0) / self.q + 1e-15):
			raise DomainError(
				f"N must lie in (0, (q-1)/q], got {self.N}",
				{"q": self.q, "N": self.N},
			)

	@property
	def rate(self) -> float:
		"""qN/(q-1): the entropy rate x this domain encodes."""
		return min(self.q * self.N / (self.q - 1.0), 1.0)

	@property
	def corner(self) -> LevelPoint:
		"""Meeting point of the two upper-boundary segments."""
		return LevelPoint(alpha=1.0 - self.rate, nu=self.rate)

	@property
	def top(self) -> LevelPoint:
		return LevelPoint(alpha=0.0, nu=self.N + 1.0 / self.q)

	def upper_nu(self, alpha: float) -> float:
		"""Largest nu admitted at alpha."""
		return min(self.N + (1.0 - alpha) / self.q, 1.0 - alpha)

	def anchor_nu(self, alpha1: float) -> float:
		return self.N + (1.0 - alpha1) / self.q

	def to_dict(self) -> Dict[str, float]:
		return {"q": self.q, "N": self.N}


@dataclass(frozen=True)
class MaximumPoint:
	value: float
	point: LevelPoint
	kind: MaximumKind

	def to_dict(self) -> Dict[str, Any]:
		return {
			"value": self.value,
			"point": self.point.to_dict(),
			"kind": self.kind.value,
		}
