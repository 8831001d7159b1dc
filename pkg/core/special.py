"""Scalar bound functions: binary entropy, the coupling y(x, eps), Phi and
phi_eps with slopes, the second-Renyi Gerber bound psi_{2,q}, the improved
exponent kappa_{2,q}, the log-Sobolev constant C(x) and threshold constants.

All functions take and return Python floats. Limit points are returned from
their closed forms rather than by evaluating a 0/0 expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

from scipy.optimize import brentq

from core.errors import DomainError, SlopeOutOfRangeError, TargetOutOfRangeError

LN2 = math.log(2.0)
FD_STEP = 1e-6
ROOT_XTOL = 1e-14
ROOT_RTOL = 1e-15
DOMAIN_TOL = 1e-12
# ln(sigma) floor for solves in log space; exp(-700) is still a normal double
_LOG_SIGMA_FLOOR = -700.0
_LOG_HALF = math.log(0.5)


def _check_closed(name: str, value: float, lo: float, hi: float) -> float:
	value = float(value)
	if math.isnan(value) or value < lo or value > hi:
		raise DomainError(f"{name} must lie in [{lo}, {hi}], got {value}", {name: value})
	return value


def _check_unit(name: str, value: float) -> float:
	return _check_closed(name, value, 0.0, 1.0)


def _check_eps(eps: float) -> float:
	return _check_closed("eps", eps, 0.0, 0.5)


def _check_order(q: float) -> float:
	q = float(q)
	if math.isnan(q) or math.isinf(q) or q <= 1.0:
		raise DomainError(f"q must be a finite order > 1, got {q}", {"q": q})
	return q


def _clamp_unit(value: float) -> float:
	return min(max(value, 0.0), 1.0)


def _solve(fn: Callable[[float], float], lo: float, hi: float) -> float:
	return float(brentq(fn, lo, hi, xtol=ROOT_XTOL, rtol=ROOT_RTOL, maxiter=500))


# binary entropy
def _entropy(t: float) -> float:
	if t <= 0.0 or t >= 1.0:
		return 0.0
	return -(t * math.log2(t) + (1.0 - t) * math.log1p(-t) / LN2)


def binary_entropy(t: float) -> float:
	return _entropy(_check_unit("t", t))


@lru_cache(maxsize=1 << 16)
def _inverse_entropy(x: float) -> float:
	if x <= 0.0:
		return 0.0
	if x >= 1.0:
		return 0.5
	if _entropy(math.exp(_LOG_SIGMA_FLOOR)) >= x:
		return 0.0
	# log-space solve keeps relative precision for tiny sigma
	log_sigma = _solve(lambda tau: _entropy(math.exp(tau)) - x, _LOG_SIGMA_FLOOR, _LOG_HALF)
	return min(math.exp(log_sigma), 0.5)


def inv_binary_entropy(x: float) -> float:
	"""Branch of H^{-1} with values in [0, 1/2]."""
	return _inverse_entropy(_check_unit("x", x))


def star(a: float, b: float) -> float:
	"""Binary convolution a * b = a + b - 2ab."""
	return a + b - 2.0 * a * b


def q0_of(eps: float) -> float:
	eps = _check_eps(eps)
	return 1.0 + (1.0 - 2.0 * eps) ** 2


def delta_of(eps: float) -> float:
	"""Noise rate of T_eps composed with itself."""
	eps = _check_eps(eps)
	return 2.0 * eps * (1.0 - eps)


@dataclass(frozen=True)
class BoundParams:
	x: float
	eps: float
	q: float

	def __post_init__(self) -> None:
		_check_unit("x", self.x)
		_check_eps(self.eps)
		_check_order(self.q)

	@property
	def sigma(self) -> float:
		return inv_binary_entropy(self.x)

	@property
	def q0(self) -> float:
		return q0_of(self.eps)

	@property
	def y_def(self) -> float:
		return (self.q - 1.0) * self.x / self.q + 1.0 / self.q

	def to_dict(self) -> dict:
		return {
			"x": self.x,
			"eps": self.eps,
			"q": self.q,
			"sigma": self.sigma,
			"q0": self.q0,
			"y_def": self.y_def,
		}


# coupling y(x, eps) and Phi
@dataclass(frozen=True)
class _Coupling:
	y: float
	# sigma - y, computed without cancellation
	low_gap: float
	radical: float


def _coupling(sigma: float, eps: float) -> _Coupling:
	if sigma <= 0.0:
		return _Coupling(y=0.0, low_gap=0.0, radical=eps)
	if eps <= 0.0:
		return _Coupling(y=0.0, low_gap=sigma, radical=0.0)
	s = sigma * (1.0 - sigma)
	radical = math.sqrt(eps * eps + 4.0 * (1.0 - 2.0 * eps) * s)
	denom = radical + eps
	y = 2.0 * eps * s / denom
	low_gap = sigma * (4.0 * (1.0 - 2.0 * eps) * s / denom + 2.0 * eps * sigma) / denom
	return _Coupling(y=y, low_gap=low_gap, radical=radical)


def y_coupling(x: float, eps: float) -> float:
	"""y(x, eps) in its rationalized form, continuous through eps = 1/2."""
	x = _check_unit("x", x)
	eps = _check_eps(eps)
	return _coupling(_inverse_entropy(x), eps).y


def _big_phi_sigma(x: float, sigma: float, eps: float) -> float:
	c = _coupling(sigma, eps)
	total = x - 1.0
	if sigma > 0.0:
		total += sigma * _entropy(c.low_gap / sigma)
	total += (1.0 - sigma) * _entropy(c.y / (1.0 - sigma))
	if c.y > 0.0:
		total += 2.0 * c.y * math.log2(eps)
	total += (1.0 - 2.0 * c.y) * math.log1p(-eps) / LN2
	return min(0.5 * total, 0.0)


def big_phi(x: float, eps: float) -> float:
	x = _check_unit("x", x)
	eps = _check_eps(eps)
	if eps == 0.0:
		return 0.5 * (x - 1.0)
	if eps == 0.5:
		return x - 1.0
	return _big_phi_sigma(x, _inverse_entropy(x), eps)


def phi_eps(x: float, eps: float) -> float:
	"""phi_eps(x) = Phi(x, 2 eps (1 - eps))."""
	return big_phi(x, delta_of(eps))


# slopes of phi_eps in x
def _slope_from_sigma(sigma: float, delta: float) -> float:
	if delta == 0.0:
		return 0.5
	if delta == 0.5:
		return 1.0
	if sigma <= 0.0:
		return 1.0
	w = 1.0 - 2.0 * sigma
	if w <= 0.0:
		return 0.5 / (1.0 - delta)
	c = _coupling(sigma, delta)
	lower = 4.0 * (1.0 - 2.0 * delta) * sigma * (1.0 - sigma) / (c.radical + delta) + 2.0 * delta * sigma
	numerator = math.log1p(2.0 * delta * w / lower)
	denominator = math.log1p(w / sigma)
	return 0.5 * (1.0 + numerator / denominator)


def _phi_prime_fd(x: float, eps: float, h: float) -> float:
	if x < h:
		return (phi_eps(x + h, eps) - phi_eps(x, eps)) / h
	if x > 1.0 - h:
		return (phi_eps(x, eps) - phi_eps(x - h, eps)) / h
	return (phi_eps(x + h, eps) - phi_eps(x - h, eps)) / (2.0 * h)


def phi_prime(x: float, eps: float, method: str = "envelope", h: float = FD_STEP) -> float:
	"""Slope of phi_eps at x.

	"envelope" differentiates through the stationary coupling and is exact up to
	rounding; "finite_difference" is the central difference with step h
	(one-sided within h of an endpoint) and is kept as a cross-check.
	"""
	x = _check_unit("x", x)
	eps = _check_eps(eps)
	if method == "finite_difference":
		return _phi_prime_fd(x, eps, h)
	if method != "envelope":
		raise DomainError(f"unknown slope method '{method}'")
	return _slope_from_sigma(_inverse_entropy(x), delta_of(eps))


@lru_cache(maxsize=4096)
def _phi_prime_inverse(s: float, eps: float) -> float:
	delta = delta_of(eps)
	if eps == 0.0 or eps == 0.5:
		# constant slope: every alpha qualifies, the left end maximizes phi - alpha s
		return 0.0
	if s >= 1.0:
		return 0.0
	if s <= 0.5 / (1.0 - delta):
		return 1.0
	if _slope_from_sigma(math.exp(_LOG_SIGMA_FLOOR), delta) <= s:
		return 0.0
	log_sigma = _solve(
		lambda tau: _slope_from_sigma(math.exp(tau), delta) - s,
		_LOG_SIGMA_FLOOR,
		_LOG_HALF,
	)
	return _entropy(math.exp(log_sigma))


def phi_prime_ceiling(eps: float) -> float:
	"""Slope of phi_eps at the sigma floor exp(-700); the largest slope phi_prime_inv resolves."""
	return _slope_from_sigma(math.exp(_LOG_SIGMA_FLOOR), delta_of(_check_eps(eps)))


def phi_prime_inv(s: float, eps: float) -> float:
	"""alpha with phi_eps'(alpha) = s, for s in [1/q0, 1].

	Roots for s above phi_prime_ceiling(eps) lie below sigma = exp(-700) and are
	returned as alpha = 0. There the slope residual |phi_eps'(0) - s| is at most
	1 - phi_prime_ceiling(eps), which stays below 1e-2 for eps in [0.05, 0.45].
	"""
	eps = _check_eps(eps)
	q0 = q0_of(eps)
	s = float(s)
	if math.isnan(s) or s < 1.0 / q0 - DOMAIN_TOL or s > 1.0 + DOMAIN_TOL:
		raise SlopeOutOfRangeError(
			f"slope {s} outside [1/q0, 1] = [{1.0 / q0}, 1]",
			{"s": s, "eps": eps, "q0": q0},
		)
	return _phi_prime_inverse(min(max(s, 1.0 / q0), 1.0), eps)


# derivatives in eps
def dphi_deps_at_zero(x: float) -> float:
	sigma = inv_binary_entropy(x)
	return (2.0 * math.sqrt(sigma * (1.0 - sigma)) - 1.0) / LN2


def dphi_deps(x: float, eps: float) -> float:
	"""d/d eps of phi_eps(x), exact by the envelope rule."""
	x = _check_unit("x", x)
	eps = _check_eps(eps)
	if eps == 0.0:
		return dphi_deps_at_zero(x)
	if eps == 0.5:
		return 0.0
	delta = delta_of(eps)
	y = _coupling(_inverse_entropy(x), delta).y
	return (1.0 - 2.0 * eps) * (2.0 * y - delta) / (delta * (1.0 - delta) * LN2)


# auxiliary curves of phi_eps
def phi_ratio(alpha: float, eps: float) -> float:
	"""(alpha - 1) / phi_eps(alpha), increasing from 2/log2(4/q0) to q0."""
	alpha = _check_unit("alpha", alpha)
	eps = _check_eps(eps)
	if eps == 0.0:
		return 2.0
	if eps == 0.5:
		return 1.0
	q0 = q0_of(eps)
	if 1.0 - alpha < 1e-12:
		return q0
	value = phi_eps(alpha, eps)
	if value >= 0.0:
		return q0
	return min((alpha - 1.0) / value, q0)


def g_curve(alpha: float, eps: float) -> float:
	"""g(alpha) = 1 - alpha - alpha phi_eps(alpha) / (1 - alpha), g(1) = 1/q0."""
	alpha = _check_unit("alpha", alpha)
	eps = _check_eps(eps)
	if alpha >= 1.0:
		return 1.0 / q0_of(eps)
	return 1.0 - alpha - alpha * phi_eps(alpha, eps) / (1.0 - alpha)


def alpha0_solve(ytarget: float, eps: float) -> float:
	eps = _check_eps(eps)
	q0 = q0_of(eps)
	y = float(ytarget)
	if math.isnan(y) or y < 1.0 / q0 - DOMAIN_TOL or y > 1.0 + DOMAIN_TOL:
		raise TargetOutOfRangeError(
			f"target {y} outside [1/q0, 1] = [{1.0 / q0}, 1]",
			{"ytarget": y, "eps": eps, "q0": q0},
		)
	if eps == 0.5:
		return 0.0
	if eps == 0.0:
		return _clamp_unit(2.0 * (1.0 - y))
	if y >= 1.0:
		return 0.0
	if y <= 1.0 / q0:
		return 1.0
	return _solve(lambda a: g_curve(a, eps) - y, 0.0, 1.0)


# improved exponents
def kappa_q_to_one(x: float, eps: float) -> float:
	"""kappa_{2,1}(x, eps) = -x / phi_eps(1 - x), with value q0 at x = 0."""
	x = _check_unit("x", x)
	eps = _check_eps(eps)
	q0 = q0_of(eps)
	if eps == 0.0:
		return 2.0
	if eps == 0.5:
		return 1.0
	if x < 1e-12:
		return q0
	value = phi_eps(1.0 - x, eps)
	if value >= 0.0:
		return q0
	return min(max(-x / value, 1.0), q0)


def kappa_2q(x: float, eps: float, q: float) -> float:
	x = _check_unit("x", x)
	eps = _check_eps(eps)
	q = _check_order(q)
	if eps == 0.0:
		return 2.0
	if eps == 0.5:
		return 1.0
	q0 = q0_of(eps)
	if x == 0.0:
		return q0
	y = (q - 1.0) * x / q + 1.0 / q
	if y <= 1.0 / q0:
		return q0
	corner = kappa_q_to_one(x, eps)
	if corner >= q:
		return corner
	return min(max(phi_ratio(alpha0_solve(y, eps), eps), 1.0), q0)


def kappa_q_two(x: float, eps: float) -> float:
	"""kappa_{2,2} written out: q0 while (x+1)/2 <= 1/q0, then the alpha_0 ratio."""
	x = _check_unit("x", x)
	eps = _check_eps(eps)
	if eps == 0.0:
		return 2.0
	if eps == 0.5:
		return 1.0
	q0 = q0_of(eps)
	y = 0.5 * (x + 1.0)
	if x == 0.0 or y <= 1.0 / q0:
		return q0
	return min(max(phi_ratio(alpha0_solve(y, eps), eps), 1.0), q0)


def psi_2q(x: float, eps: float, q: float) -> float:
	x = _check_unit("x", x)
	eps = _check_eps(eps)
	q = _check_order(q)
	if eps == 0.5:
		return 0.0
	if phi_prime(1.0 - x, eps) < 1.0 / q:
		alpha0 = phi_prime_inv(1.0 / q, eps)
		return 2.0 * ((q - 1.0) * x / q + phi_eps(alpha0, eps) + (1.0 - alpha0) / q)
	return 2.0 * (phi_eps(1.0 - x, eps) + x)


def mgl_psi(x: float, eps: float) -> float:
	"""Gerber bound psi(x, eps) = 1 - H(eps * H^{-1}(1 - x))."""
	x = _check_unit("x", x)
	eps = _check_eps(eps)
	if eps == 0.0:
		return x
	return max(1.0 - _entropy(star(eps, _inverse_entropy(1.0 - x))), 0.0)


def mgl_psi_boundary(eps: float, h: float = FD_STEP) -> Tuple[float, float]:
	"""(psi(0, eps), forward-difference slope of psi at 0); the slope is (1 - 2 eps)^2."""
	value = mgl_psi(0.0, eps)
	return value, (mgl_psi(h, eps) - value) / h


def log_sobolev_C(x: float) -> float:
	x = _check_unit("x", x)
	if x == 0.0:
		return 2.0 * LN2
	t = 0.5 - _inverse_entropy(1.0 - x)
	# 1 - 2 sqrt(sigma (1 - sigma)) = 1 - sqrt(1 - 4 t^2)
	gap = 4.0 * t * t / (1.0 + math.sqrt(max(1.0 - 4.0 * t * t, 0.0)))
	return min(max(2.0 * gap / x, 2.0 * LN2), 2.0)


# threshold constants
def x_threshold(q: float, eps: float) -> float:
	q = _check_order(q)
	q0 = q0_of(eps)
	return max(0.0, (q - q0) / (q0 * (q - 1.0)))


def eps_threshold(q: float) -> float:
	q = _check_order(q)
	if q >= 2.0:
		return 0.0
	return 0.5 * (1.0 - math.sqrt(q - 1.0))
