from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional

from core.cube import (
	CubeFunction,
	ball_indicator,
	constant_function,
	point_mass,
	sphere_indicator,
	sphere_mixture,
)
from core.enums import GeneratorKind
from core.errors import InputFormatError


def _get_int(data: dict, key: str, default: Optional[int] = None) -> Optional[int]:
	value = data.get(key, default)
	if value is None:
		return None
	try:
		return int(value)
	except (TypeError, ValueError) as exc:
		raise InputFormatError(f"'{key}' must be an integer, got {value!r}", {key: value}) from exc


def _get_float(data: dict, key: str, default: Optional[float] = None) -> Optional[float]:
	value = data.get(key, default)
	if value is None:
		return None
	try:
		return float(value)
	except (TypeError, ValueError) as exc:
		raise InputFormatError(f"'{key}' must be a number, got {value!r}", {key: value}) from exc


@dataclass(frozen=True)
class GeneratorSpec:
	kind: GeneratorKind
	n: int
	r: Optional[int] = None
	v: Optional[float] = None
	point: int = 0

	def build(self) -> CubeFunction:
		if self.kind == GeneratorKind.CONSTANT:
			return constant_function(self.n, 1.0 if self.v is None else self.v)
		if self.kind == GeneratorKind.POINT_MASS:
			return point_mass(self.n, self.point, self.v)
		if self.r is None:
			raise InputFormatError(f"generator '{self.kind.value}' needs 'r'", {"kind": self.kind.value})
		if self.kind == GeneratorKind.SPHERE:
			return sphere_indicator(self.n, self.r)
		if self.kind == GeneratorKind.BALL:
			return ball_indicator(self.n, self.r)
		if self.v is None:
			raise InputFormatError("generator 'mixture' needs 'v'", {"kind": self.kind.value})
		return sphere_mixture(self.n, self.r, self.v)

	def to_dict(self) -> Dict[str, Any]:
		data: Dict[str, Any] = {"kind": self.kind.value, "n": self.n}
		if self.r is not None:
			data["r"] = self.r
		if self.v is not None:
			data["v"] = self.v
		if self.kind == GeneratorKind.POINT_MASS:
			data["point"] = self.point
		return data

	@classmethod
	def from_dict(cls, data: dict) -> "GeneratorSpec":
		raw_kind = str(data.get("kind", ""))
		try:
			kind = GeneratorKind(raw_kind)
		except ValueError as exc:
			raise InputFormatError(f"unknown generator kind '{raw_kind}'", {"kind": raw_kind}) from exc
		n = _get_int(data, "n")
		if n is None:
			raise InputFormatError("generator spec needs 'n'")
		return cls(
			kind=kind,
			n=n,
			r=_get_int(data, "r"),
			v=_get_float(data, "v"),
			point=_get_int(data, "point", 0) or 0,
		)


def function_from_payload(data: Any) -> CubeFunction:
	"""A CubeFunction from either {"n", "values"} or a generator spec with "kind"."""
	if not isinstance(data, dict):
		raise InputFormatError("input must be a JSON object")
	if "kind" in data:
		return GeneratorSpec.from_dict(data).build()
	if "values" in data:
		return CubeFunction.from_dict(data)
	raise InputFormatError("input needs either 'values' or a generator 'kind'")
