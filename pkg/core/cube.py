"""Exact functions on the boolean cube {0,1}^n.

Values are dense float64 arrays of length 2^n indexed by the bitmask of the
point. Expectations, norms and inner products are taken under the uniform
measure. The noise operator acts on the Walsh spectrum.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterable, Optional, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from core.errors import (
	DimensionMismatchError,
	DimensionTooLargeError,
	DomainError,
	InvalidOrderError,
	LengthMismatchError,
	MassOverflowError,
	NegativeValueError,
	NonFiniteValueError,
	RadiusOutOfRangeError,
	ZeroFunctionError,
)

DEFAULT_MAX_N = 24
DIRECT_ORACLE_MAX_N = 10


def dimension_cap() -> int:
	raw = os.getenv("CUBE_MAX_N", str(DEFAULT_MAX_N))
	try:
		parsed = int(raw)
	except ValueError:
		return DEFAULT_MAX_N
	return parsed if parsed > 0 else DEFAULT_MAX_N


@dataclass(frozen=True)
class NoiseParam:
	eps: float

	def __post_init__(self) -> None:
		if not (0.0 <= float(self.eps) <= 0.5):
			raise DomainError(
				f"noise parameter must lie in [0, 1/2], got {self.eps}",
				{"eps": self.eps},
			)

	@property
	def rho(self) -> float:
		return 1.0 - 2.0 * float(self.eps)


Noise = Union[float, NoiseParam]


def as_noise(eps: Noise) -> float:
	if isinstance(eps, NoiseParam):
		return float(eps.eps)
	return float(NoiseParam(float(eps)).eps)


def composed_noise(eps1: Noise, eps2: Noise) -> float:
	"""Noise rate of T_eps1 followed by T_eps2."""
	a = as_noise(eps1)
	b = as_noise(eps2)
	return a + b - 2.0 * a * b


@dataclass(frozen=True, eq=False)
class CubeFunction:
	n: int
	values: NDArray[np.float64]
	nonnegative: bool

	@property
	def size(self) -> int:
		return 1 << self.n

	def mean(self) -> float:
		return float(np.mean(self.values))

	def abs(self) -> "CubeFunction":
		return make_function(self.n, np.abs(self.values))

	def scaled(self, factor: float) -> "CubeFunction":
		return make_function(self.n, self.values * float(factor))

	def support_size(self) -> int:
		return int(np.count_nonzero(self.values))

	def is_constant(self, tol: float = 0.0) -> bool:
		return bool(np.ptp(self.values) <= tol)

	def to_dict(self) -> Dict[str, Any]:
		return {
			"n": self.n,
			"values": [float(v) for v in self.values],
		}

	@classmethod
	def from_dict(cls, data: dict) -> "CubeFunction":
		if "n" not in data or "values" not in data:
			raise LengthMismatchError("cube function needs 'n' and 'values'")
		return make_function(int(data["n"]), data["values"])


@dataclass(frozen=True, eq=False)
class Spectrum:
	n: int
	coeffs: NDArray[np.float64]

	def energy(self) -> float:
		return float(np.sum(self.coeffs * self.coeffs))

	def level_weights(self) -> NDArray[np.float64]:
		"""Squared coefficient mass on each level |S| = 0..n."""
		return np.bincount(weights(self.n), weights=self.coeffs * self.coeffs, minlength=self.n + 1)


def _frozen(array: NDArray[np.float64]) -> NDArray[np.float64]:
	array.setflags(write=False)
	return array


def make_function(n: int, values: Iterable[float] | NDArray[np.float64]) -> CubeFunction:
	n = int(n)
	if n < 0:
		raise LengthMismatchError(f"dimension must be >= 0, got {n}", {"n": n})
	cap = dimension_cap()
	if n > cap:
		raise DimensionTooLargeError(
			f"dimension {n} exceeds the cap {cap} (set CUBE_MAX_N to raise it)",
			{"n": n, "cap": cap},
		)

	try:
		array = np.array(values, dtype=np.float64).reshape(-1)
	except (TypeError, ValueError) as exc:
		raise NonFiniteValueError(f"values are not real numbers: {exc}") from exc

	expected = 1 << n
	if array.shape[0] != expected:
		raise LengthMismatchError(
			f"expected {expected} values for n={n}, got {array.shape[0]}",
			{"n": n, "expected": expected, "actual": int(array.shape[0])},
		)
	if not np.all(np.isfinite(array)):
		raise NonFiniteValueError("values must be finite", {"n": n})

	return CubeFunction(n=n, values=_frozen(array), nonnegative=bool(np.all(array >= 0.0)))


def constant_function(n: int, value: float = 1.0) -> CubeFunction:
	return make_function(n, np.full(1 << int(n), float(value)))


def point_mass(n: int, point: int = 0, value: Optional[float] = None) -> CubeFunction:
	size = 1 << int(n)
	if not (0 <= point < size):
		raise RadiusOutOfRangeError(f"point {point} is not a vertex of the {n}-cube")
	values = np.zeros(size)
	values[point] = float(size) if value is None else float(value)
	return make_function(n, values)


@lru_cache(maxsize=64)
def _weights_cached(n: int) -> NDArray[np.int64]:
	index = np.arange(1 << n, dtype=np.int64)
	counts = np.zeros(1 << n, dtype=np.int64)
	for bit in range(n):
		counts += (index >> bit) & 1
	return _frozen(counts)


def weights(n: int) -> NDArray[np.int64]:
	"""Hamming weight of every vertex (equivalently |S| of every mask)."""
	return _weights_cached(int(n))


def _fwht(values: NDArray[np.float64]) -> NDArray[np.float64]:
	out = np.array(values, dtype=np.float64, copy=True)
	size = out.shape[0]
	half = 1
	while half < size:
		blocks = out.reshape(-1, 2, half)
		upper = blocks[:, 0, :].copy()
		lower = blocks[:, 1, :]
		blocks[:, 0, :] += lower
		blocks[:, 1, :] = upper - lower
		half *= 2
	return out


def walsh_transform(f: CubeFunction) -> Spectrum:
	"""Orthonormal Walsh-Fourier coefficients f^(S) = E[f chi_S]."""
	coeffs = _fwht(f.values) / float(f.size)
	return Spectrum(n=f.n, coeffs=_frozen(coeffs))


def inverse_walsh_transform(spectrum: Spectrum) -> CubeFunction:
	return make_function(spectrum.n, _fwht(spectrum.coeffs))


def _noise_multipliers(n: int, eps: float) -> NDArray[np.float64]:
	return np.power(1.0 - 2.0 * eps, weights(n).astype(np.float64))


def noise_apply(f: CubeFunction, eps: Noise) -> CubeFunction:
	"""T_eps f, exact via spectral scaling."""
	e = as_noise(eps)
	if e == 0.0:
		return f
	if e == 0.5:
		return constant_function(f.n, f.mean())
	spectrum = walsh_transform(f)
	scaled = spectrum.coeffs * _noise_multipliers(f.n, e)
	values = _fwht(scaled)
	if f.nonnegative:
		# T_eps preserves nonnegativity; drop round-off below zero
		values = np.maximum(values, 0.0)
	return make_function(f.n, values)


def noise_apply_direct(f: CubeFunction, eps: Noise) -> CubeFunction:
	"""O(4^n) convolution with the binary symmetric channel kernel."""
	e = as_noise(eps)
	if f.n > DIRECT_ORACLE_MAX_N:
		raise DimensionTooLargeError(
			f"direct convolution is limited to n <= {DIRECT_ORACLE_MAX_N}",
			{"n": f.n},
		)
	index = np.arange(f.size)
	distance = weights(f.n)[index[:, None] ^ index[None, :]].astype(np.float64)
	kernel = np.power(e, distance) * np.power(1.0 - e, f.n - distance)
	return make_function(f.n, kernel @ f.values)


def lq_norm(f: CubeFunction, q: float) -> float:
	q = float(q)
	if not q >= 1.0 or math.isinf(q):
		raise InvalidOrderError(f"norm order must be a finite q >= 1, got {q}", {"q": q})
	magnitudes = np.abs(f.values)
	peak = float(np.max(magnitudes)) if magnitudes.size else 0.0
	if peak == 0.0:
		return 0.0
	return peak * float(np.mean((magnitudes / peak) ** q)) ** (1.0 / q)


def _require_distribution(f: CubeFunction) -> None:
	if not f.nonnegative:
		raise NegativeValueError("entropy needs a nonnegative function", {"n": f.n})
	if not np.any(f.values > 0.0):
		raise ZeroFunctionError("entropy of the zero function is undefined", {"n": f.n})


def renyi_entropy(f: CubeFunction, q: float, normalize: bool = True) -> float:
	"""Ent_q(f) = log2(E f^q) / (q - 1), after scaling f to mean 1 when normalize is set."""
	q = float(q)
	if not q > 1.0 or math.isinf(q):
		raise InvalidOrderError(f"Renyi order must be a finite q > 1, got {q}", {"q": q})
	_require_distribution(f)
	peak = float(np.max(f.values))
	scaled = f.values / peak
	log_moment = math.log2(float(np.mean(scaled ** q))) + q * math.log2(peak)
	if normalize:
		log_moment -= q * math.log2(f.mean())
	return log_moment / (q - 1.0)


def shannon_ent(f: CubeFunction) -> float:
	"""Ent(f) = E f log2 f - E f log2 E f, with 0 log 0 = 0."""
	_require_distribution(f)
	positive = f.values[f.values > 0.0]
	mean = f.mean()
	total = float(np.sum(positive * np.log2(positive))) / f.size
	return max(total - mean * math.log2(mean), 0.0)


def distribution_renyi_entropy(probabilities: Sequence[float] | NDArray[np.float64], q: float) -> float:
	"""H_q(P) = n - Ent_q(2^n P) for a probability vector on the cube."""
	array = np.asarray(probabilities, dtype=np.float64)
	n = int(round(math.log2(array.shape[0]))) if array.shape[0] else -1
	if n < 0 or (1 << n) != array.shape[0]:
		raise LengthMismatchError("distribution length must be a power of two")
	if not math.isclose(float(np.sum(array)), 1.0, rel_tol=0.0, abs_tol=1e-9):
		raise DomainError("probabilities must sum to 1")
	f = make_function(n, array * float(1 << n))
	if float(q) == 1.0:
		return n - shannon_ent(f)
	return n - renyi_entropy(f, q)


def _require_same_dimension(f: CubeFunction, g: CubeFunction) -> None:
	if f.n != g.n:
		raise DimensionMismatchError(
			f"functions live on different cubes (n={f.n} vs n={g.n})",
			{"n_left": f.n, "n_right": g.n},
		)


def inner_product(f: CubeFunction, g: CubeFunction) -> float:
	_require_same_dimension(f, g)
	return float(np.mean(f.values * g.values))


def inner_product_noisy(f: CubeFunction, eps: Noise) -> float:
	"""<T_eps f, f> = sum_S (1 - 2 eps)^|S| f^(S)^2."""
	e = as_noise(eps)
	coeffs = walsh_transform(f).coeffs
	return float(np.sum(_noise_multipliers(f.n, e) * coeffs * coeffs))


def dirichlet_form(f: CubeFunction, g: CubeFunction) -> float:
	"""E_x sum_{y ~ x} (f(x) - f(y)) (g(x) - g(y)), by edge enumeration."""
	_require_same_dimension(f, g)
	index = np.arange(f.size)
	total = np.zeros(f.size)
	for bit in range(f.n):
		flipped = index ^ (1 << bit)
		total += (f.values - f.values[flipped]) * (g.values - g.values[flipped])
	return float(np.mean(total))


def dirichlet_form_spectral(f: CubeFunction, g: CubeFunction) -> float:
	# each edge is seen from both endpoints, hence 4|S| rather than |S|
	_require_same_dimension(f, g)
	levels = 4.0 * weights(f.n).astype(np.float64)
	return float(np.sum(levels * walsh_transform(f).coeffs * walsh_transform(g).coeffs))


def _check_radius(n: int, r: int) -> None:
	if not (0 <= int(r) <= int(n)):
		raise RadiusOutOfRangeError(f"radius {r} outside [0, {n}]", {"n": n, "r": r})


def sphere_indicator(n: int, r: int) -> CubeFunction:
	_check_radius(n, r)
	return make_function(n, (weights(n) == int(r)).astype(np.float64))


def ball_indicator(n: int, r: int) -> CubeFunction:
	_check_radius(n, r)
	return make_function(n, (weights(n) <= int(r)).astype(np.float64))


def sphere_mixture(n: int, r: int, v: float) -> CubeFunction:
	"""Mean-one function equal to v on the sphere of radius r and constant elsewhere."""
	_check_radius(n, r)
	v = float(v)
	size = 1 << int(n)
	sphere_size = math.comb(int(n), int(r))
	if v < 0.0 or sphere_size * v > size * (1.0 + 1e-12):
		raise MassOverflowError(
			f"sphere mass {sphere_size} * {v} exceeds the cube size {size}",
			{"n": n, "r": r, "v": v},
		)
	if sphere_size == size:
		if not math.isclose(v, 1.0, rel_tol=1e-12):
			raise MassOverflowError("sphere covers the cube; only v = 1 has mean one", {"v": v})
		return constant_function(n, 1.0)
	outside = max((size - sphere_size * v) / (size - sphere_size), 0.0)
	values = np.where(weights(n) == int(r), v, outside)
	return make_function(n, values)


def radial_function(n: int, level_values: Sequence[float]) -> CubeFunction:
	"""Function whose value at x depends only on |x|."""
	levels = np.asarray(level_values, dtype=np.float64)
	if levels.shape[0] != int(n) + 1:
		raise LengthMismatchError(
			f"radial profile needs {int(n) + 1} levels, got {levels.shape[0]}",
		)
	return make_function(n, levels[weights(n)])
