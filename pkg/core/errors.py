from __future__ import annotations

from typing import Any, Dict, Optional


class CubeError(ValueError):
	"""Base error for malformed inputs. Failing inequalities are never raised."""

	code = "cube_error"

	def __init__(self, message: str, context: Optional[Dict[str, Any]] = None) -> None:
		super().__init__(message)
		self.message = message
		self.context: Dict[str, Any] = dict(context or {})

	def to_dict(self) -> Dict[str, Any]:
		return {
			"code": self.code,
			"message": self.message,
			"context": self.context,
		}


# cube
class LengthMismatchError(CubeError):
	code = "length_mismatch"


class NonFiniteValueError(CubeError):
	code = "non_finite_value"


class DimensionMismatchError(CubeError):
	code = "dimension_mismatch"


class DimensionTooLargeError(CubeError):
	code = "dimension_too_large"


class InvalidOrderError(CubeError):
	code = "invalid_order"


class NegativeValueError(CubeError):
	code = "negative_value"


class ZeroFunctionError(CubeError):
	code = "zero_function"


class RadiusOutOfRangeError(CubeError):
	code = "radius_out_of_range"


class MassOverflowError(CubeError):
	code = "mass_overflow"


# special
class DomainError(CubeError):
	code = "domain_error"


class SlopeOutOfRangeError(DomainError):
	code = "slope_out_of_range"


class TargetOutOfRangeError(DomainError):
	code = "target_out_of_range"


# bounds
class ConstantFunctionError(CubeError):
	code = "constant_function"


class EmptySetError(CubeError):
	code = "empty_set"


class FullCubeError(CubeError):
	code = "full_cube"


# extremal
class PointOutsideOmegaError(CubeError):
	code = "point_outside_omega"


class AnchorConstraintViolatedError(CubeError):
	code = "anchor_constraint_violated"


class CaseMismatchError(CubeError):
	code = "case_mismatch"


class ParamOutOfRangeError(CubeError):
	code = "param_out_of_range"


# suite / cli
class UnknownModelError(CubeError):
	code = "unknown_model"


class InputFormatError(CubeError):
	code = "input_format"
