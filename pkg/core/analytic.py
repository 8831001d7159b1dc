"""Radial (weight-only) functions evaluated in log space.

A profile puts value 2^{L_i} on the Hamming spheres of radii r_i around 0 and
a constant w >= 0 elsewhere. Moments and noisy inner products come from
log-Gamma binomials and exact weight-transition sums, so n is not limited
by 2^n memory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from scipy.special import gammaln, logsumexp

from core.cube import CubeFunction, radial_function
from core.errors import DomainError, MassOverflowError, RadiusOutOfRangeError

LN2 = math.log(2.0)


def log_binomial(n: int, k: int | np.ndarray) -> float | np.ndarray:
	return gammaln(n + 1) - gammaln(np.asarray(k) + 1) - gammaln(n - np.asarray(k) + 1)


@lru_cache(maxsize=4096)
def log_sphere_mass(n: int, r: int) -> float:
	"""ln(C(n, r) / 2^n)."""
	if not (0 <= r <= n):
		raise RadiusOutOfRangeError(f"radius {r} outside [0, {n}]", {"n": n, "r": r})
	return float(log_binomial(n, r)) - n * LN2


@lru_cache(maxsize=1 << 14)
def log_transition(n: int, r_from: int, r_to: int, delta: float) -> float:
	"""ln P(|x xor z| = r_to) for |x| = r_from and z ~ Bernoulli(delta)^n."""
	lo = max(0, r_from - r_to)
	hi = min(r_from, n - r_to)
	if lo > hi:
		return -math.inf
	if delta <= 0.0:
		return 0.0 if r_from == r_to else -math.inf
	ones_flipped = np.arange(lo, hi + 1)
	zeros_flipped = r_to - r_from + ones_flipped
	flips = ones_flipped + zeros_flipped
	terms = (
		log_binomial(r_from, ones_flipped)
		+ log_binomial(n - r_from, zeros_flipped)
		+ flips * math.log(delta)
		+ (n - flips) * math.log1p(-delta)
	)
	return float(logsumexp(terms))


def _log_abs_difference(log_a: float, log_b: float) -> Tuple[float, float]:
	"""(ln|a - b|, sign(a - b)) from ln a, ln b."""
	if log_b == -math.inf:
		return log_a, 1.0
	if log_a == log_b:
		return -math.inf, 0.0
	if log_a > log_b:
		return log_a + math.log1p(-math.exp(log_b - log_a)), 1.0
	return log_b + math.log1p(-math.exp(log_a - log_b)), -1.0


@dataclass(frozen=True)
class RadialProfile:
	n: int
	radii: Tuple[int, ...]
	log2_values: Tuple[float, ...]
	outside: float

	def __post_init__(self) -> None:
		if self.n < 1:
			raise DomainError("profiles need n >= 1", {"n": self.n})
		if len(self.radii) != len(self.log2_values):
			raise DomainError("each sphere needs one value")
		if len(set(self.radii)) != len(self.radii):
			raise DomainError("sphere radii must be distinct", {"radii": list(self.radii)})
		for r in self.radii:
			if not (0 <= r <= self.n):
				raise RadiusOutOfRangeError(f"radius {r} outside [0, {self.n}]")
		if self.outside < 0.0 or not math.isfinite(self.outside):
			raise MassOverflowError("complement value must be finite and >= 0", {"outside": self.outside})

	@property
	def log_masses(self) -> List[float]:
		return [log_sphere_mass(self.n, r) for r in self.radii]

	@property
	def log_outside_mass(self) -> float:
		taken = set(self.radii)
		rest = [log_sphere_mass(self.n, k) for k in range(self.n + 1) if k not in taken]
		return float(logsumexp(rest)) if rest else -math.inf

	def _log_outside(self) -> float:
		return math.log(self.outside) if self.outside > 0.0 else -math.inf

	def log2_moment(self, p: float) -> float:
		"""log2 E f^p."""
		terms = [lm + p * lv * LN2 for lm, lv in zip(self.log_masses, self.log2_values)]
		if self.outside > 0.0:
			terms.append(self.log_outside_mass + p * self._log_outside())
		return float(logsumexp(terms)) / LN2

	def log2_mean(self) -> float:
		return self.log2_moment(1.0)

	def log2_norm(self, p: float) -> float:
		return self.log2_moment(p) / p

	def renyi_rate(self, q: float) -> float:
		"""Ent_q(f / ||f||_1) / n."""
		return (self.log2_moment(q) - q * self.log2_mean()) / ((q - 1.0) * self.n)

	def log2_noisy_inner(self, delta: float) -> float:
		"""log2 <T_delta f, f>, splitting f = w + sum_i (v_i - w) 1_{S_i}."""
		log_w = self._log_outside()
		diffs = [_log_abs_difference(lv * LN2, log_w) for lv in self.log2_values]
		masses = self.log_masses
		logs: List[float] = []
		signs: List[float] = []
		if self.outside > 0.0:
			logs.append(2.0 * log_w)
			signs.append(1.0)
			for (log_d, sign), lm in zip(diffs, masses):
				if sign != 0.0:
					logs.append(LN2 + log_w + log_d + lm)
					signs.append(sign)
		for (log_a, sign_a), lm, r_a in zip(diffs, masses, self.radii):
			for (log_b, sign_b), r_b in zip(diffs, self.radii):
				if sign_a == 0.0 or sign_b == 0.0:
					continue
				logs.append(log_a + log_b + lm + log_transition(self.n, r_a, r_b, float(delta)))
				signs.append(sign_a * sign_b)
		if not logs:
			return -math.inf
		value, sign = logsumexp(logs, b=signs, return_sign=True)
		if sign <= 0:
			return -math.inf
		return float(value) / LN2

	def level_values(self) -> List[float]:
		levels = [self.outside] * (self.n + 1)
		for r, lv in zip(self.radii, self.log2_values):
			levels[r] = 2.0 ** lv
		return levels

	def to_cube_function(self) -> CubeFunction:
		return radial_function(self.n, self.level_values())

	def to_dict(self) -> Dict[str, Any]:
		outside_mass = math.exp(self.log_outside_mass) if self.outside > 0.0 else 0.0
		return {
			"n": self.n,
			"spheres": [
				{"radius_fraction": r / self.n, "log2_value_per_n": lv / self.n}
				for r, lv in zip(self.radii, self.log2_values)
			],
			"uniform_mass": self.outside * outside_mass,
			"outside_value": self.outside,
		}

	@classmethod
	def from_dict(cls, data: dict) -> "RadialProfile":
		n = int(data.get("n", 0))
		spheres = data.get("spheres", [])
		radii = tuple(int(round(float(s["radius_fraction"]) * n)) for s in spheres)
		log2_values = tuple(float(s["log2_value_per_n"]) * n for s in spheres)
		if "outside_value" in data:
			outside = float(data["outside_value"])
		else:
			draft = cls(n=n, radii=radii, log2_values=log2_values, outside=1.0)
			mass = math.exp(draft.log_outside_mass)
			outside = float(data.get("uniform_mass", 0.0)) / mass if mass > 0.0 else 0.0
		return cls(n=n, radii=radii, log2_values=log2_values, outside=outside)


def mean_one_profile(n: int, radii: Sequence[int], log2_values: Sequence[float]) -> RadialProfile:
	"""Spheres as given, complement value chosen so E f = 1 (clipped at 0)."""
	draft = RadialProfile(n=n, radii=tuple(radii), log2_values=tuple(log2_values), outside=0.0)
	taken = sum(math.exp(lm + lv * LN2) for lm, lv in zip(draft.log_masses, draft.log2_values))
	rest = math.exp(draft.log_outside_mass)
	outside = max((1.0 - taken) / rest, 0.0) if rest > 0.0 else 0.0
	return RadialProfile(n=n, radii=tuple(radii), log2_values=tuple(log2_values), outside=outside)
