"""The variational side of the bounds.

Level points (alpha, nu) describe a level set of a function: alpha is the
entropy rate of a Hamming sphere (radius H^{-1}(alpha) n) and nu the log2
value per coordinate carried on it.
The feasible region is bounded above by two segments meeting at the corner
(1 - x, x), x = qN/(q-1); all maxima below are searched on that boundary and
refined with bounded Brent.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar
from scipy.special import logsumexp

from core.analytic import LN2, RadialProfile, log_binomial, log_sphere_mass, mean_one_profile
from core.cube import dimension_cap, lq_norm, noise_apply, renyi_entropy
from core.enums import EvaluationMode, MaximumKind, OmegaVariant, TightnessKind
from core.errors import (
	AnchorConstraintViolatedError,
	CaseMismatchError,
	DimensionTooLargeError,
	DomainError,
	ParamOutOfRangeError,
	PointOutsideOmegaError,
)
from core.models.omega import LevelPoint, MaximumPoint, OmegaDomain
from core.models.tightness import TightnessResult
from core.special import (
	alpha0_solve,
	delta_of,
	inv_binary_entropy,
	kappa_2q,
	kappa_q_to_one,
	phi_eps,
	phi_ratio,
	psi_2q,
	q0_of,
)

OMEGA_TOL = 1e-12
ANCHOR_TOL = 1e-10
BRANCH_TOL = 1e-6
REFINE_XTOL = 1e-12
BOUNDARY_SAMPLES = 400
INTERIOR_SAMPLES = 40
RATE_MARGIN = 1e-10


def omega_contains(dom: OmegaDomain, p: LevelPoint, variant: OmegaVariant = OmegaVariant.OMEGA) -> bool:
	if p.alpha + p.nu > 1.0 + OMEGA_TOL:
		return False
	if (p.alpha - 1.0) / dom.q + p.nu > dom.N + OMEGA_TOL:
		return False
	if OmegaVariant(variant) == OmegaVariant.OMEGA and p.nu < -OMEGA_TOL:
		return False
	return True


def _segments(dom: OmegaDomain) -> List[Tuple[float, float]]:
	corner = dom.corner.alpha
	return [(lo, hi) for lo, hi in ((0.0, corner), (corner, 1.0)) if hi > lo]


def _maximize(fn: Callable[[float], float], lo: float, hi: float, start: Sequence[float]) -> Tuple[float, float]:
	"""(value, argument) of fn on [lo, hi]: best of the start points and a bounded Brent pass."""
	best = max(((fn(a), a) for a in start), key=lambda item: item[0])
	if hi > lo:
		result = minimize_scalar(
			lambda a: -fn(a),
			bounds=(lo, hi),
			method="bounded",
			options={"xatol": REFINE_XTOL},
		)
		if -float(result.fun) > best[0]:
			best = (-float(result.fun), float(result.x))
	return best


def omega_max_phi_nu(q: float, N: float, eps: float) -> Tuple[float, LevelPoint]:
	"""max of phi_eps(alpha) + nu over the region; equals psi_{2,q}(qN/(q-1), eps) / 2."""
	dom = OmegaDomain(q, N)

	def on_boundary(alpha: float) -> float:
		return phi_eps(alpha, eps) + dom.upper_nu(alpha)

	best = max(
		(_maximize(on_boundary, lo, hi, (lo, hi)) for lo, hi in _segments(dom)),
		key=lambda item: item[0],
	)
	value, alpha = best
	return value, LevelPoint(alpha=alpha, nu=dom.upper_nu(alpha))


def brute_grid_max(q: float, N: float, eps: float, size: int = 2000) -> float:
	"""Grid maximum of phi_eps(alpha) + nu over size x size points of the region."""
	dom = OmegaDomain(q, N)
	alphas = np.union1d(np.linspace(0.0, 1.0, size), [dom.corner.alpha])
	phis = np.array([phi_eps(float(a), eps) for a in alphas])
	tops = np.array([dom.upper_nu(float(a)) for a in alphas])
	steps = np.linspace(0.0, 1.0, size)
	nus = -1.0 + steps[None, :] * (tops[:, None] + 1.0)
	return float(np.max(phis[:, None] + nus))


def _check_anchor(dom: OmegaDomain, alpha1: float, nu1: float) -> None:
	context = {"alpha1": alpha1, "nu1": nu1, "q": dom.q, "N": dom.N}
	if abs((alpha1 - 1.0) / dom.q + nu1 - dom.N) > ANCHOR_TOL:
		raise AnchorConstraintViolatedError("anchor must satisfy (alpha1 - 1)/q + nu1 = N", context)
	try:
		anchor = LevelPoint(alpha=alpha1, nu=nu1)
	except DomainError as exc:
		raise AnchorConstraintViolatedError(str(exc), context) from exc
	if alpha1 >= 1.0 or not omega_contains(dom, anchor, OmegaVariant.OMEGA):
		raise AnchorConstraintViolatedError("anchor lies outside the region", context)


def _implicit_kappa(alpha1: float, nu1: float, alpha: float, nu: float, phi: float, q0: float) -> float:
	if alpha >= 1.0:
		return (1.0 - alpha1) / nu1
	target = phi + nu

	def gap(kappa: float) -> float:
		return max((alpha1 - 1.0) / kappa + nu1, (alpha - 1.0) / kappa + nu) - target

	if gap(q0) <= 0.0:
		return q0
	lo = 0.5 * q0
	for _ in range(200):
		if gap(lo) < 0.0:
			break
		lo *= 0.5
	return float(brentq(gap, lo, q0, xtol=1e-14, rtol=1e-15, maxiter=500))


def implicit_kappa(alpha1: float, nu1: float, p: LevelPoint, q: float, N: float, eps: float) -> float:
	"""kappa with phi_eps(alpha) + nu = max((alpha1-1)/kappa + nu1, (alpha-1)/kappa + nu)."""
	dom = OmegaDomain(q, N)
	_check_anchor(dom, alpha1, nu1)
	if not omega_contains(dom, p, OmegaVariant.OMEGA):
		raise PointOutsideOmegaError(
			f"point ({p.alpha}, {p.nu}) lies outside the region",
			{"alpha": p.alpha, "nu": p.nu, "q": q, "N": N},
		)
	return _implicit_kappa(alpha1, nu1, p.alpha, p.nu, phi_eps(p.alpha, eps), q0_of(eps))


def _classify(alpha1: float, nu1: float, alpha: float, nu: float, value: float) -> MaximumKind:
	anchor_branch = (alpha1 - 1.0) / value + nu1
	own_branch = (alpha - 1.0) / value + nu
	if anchor_branch > own_branch + BRANCH_TOL:
		return MaximumKind.FIRST
	return MaximumKind.SECOND


def locate_m_maximum(
	alpha1: float,
	nu1: float,
	q: float,
	N: float,
	eps: float,
	boundary_samples: int = BOUNDARY_SAMPLES,
	interior_samples: int = INTERIOR_SAMPLES,
) -> MaximumPoint:
	dom = OmegaDomain(q, N)
	_check_anchor(dom, alpha1, nu1)
	q0 = q0_of(eps)

	def kappa_at(alpha: float, nu: float) -> float:
		return _implicit_kappa(alpha1, nu1, alpha, nu, phi_eps(alpha, eps), q0)

	def on_boundary(alpha: float) -> float:
		return kappa_at(alpha, dom.upper_nu(alpha))

	value, alpha, nu = -math.inf, 0.0, dom.upper_nu(0.0)
	for lo, hi in _segments(dom):
		grid = np.linspace(lo, hi, boundary_samples)
		values = [on_boundary(float(a)) for a in grid]
		i = int(np.argmax(values))
		left = float(grid[max(i - 1, 0)])
		right = float(grid[min(i + 1, grid.size - 1)])
		found, where = _maximize(on_boundary, left, right, (float(grid[i]),))
		if found > value:
			value, alpha, nu = found, where, dom.upper_nu(where)

	# coarse interior sweep; the maximum sits on the boundary
	for a in np.linspace(0.0, 1.0, interior_samples, endpoint=False):
		top = dom.upper_nu(float(a))
		for t in np.linspace(0.0, 1.0, interior_samples, endpoint=False):
			candidate = kappa_at(float(a), float(t) * top)
			if candidate > value + 1e-15:
				value, alpha, nu = candidate, float(a), float(t) * top

	point = LevelPoint(alpha=alpha, nu=nu)
	return MaximumPoint(value=value, point=point, kind=_classify(alpha1, nu1, alpha, nu, value))


def big_m(alpha1: float, nu1: float, q: float, N: float, eps: float) -> float:
	return locate_m_maximum(alpha1, nu1, q, N, eps).value


def alpha_star(alpha1: float, q: float, N: float, eps: float) -> float:
	"""Solution in (1 - x, 1) of (a-1)/phi_eps(a) = (a - alpha1)/(a - (1 - nu1))."""
	dom = OmegaDomain(q, N)
	corner = dom.corner.alpha
	context = {"alpha1": alpha1, "q": q, "N": N, "eps": eps}
	if kappa_q_to_one(dom.rate, eps) >= q:
		raise CaseMismatchError("needs -x/phi_eps(1 - x) < q", context)
	if not (0.0 <= alpha1 < corner - OMEGA_TOL):
		raise CaseMismatchError("anchor must lie on the left segment, away from the corner", context)
	pivot = 1.0 - dom.anchor_nu(alpha1)

	def gap(a: float) -> float:
		return phi_ratio(a, eps) - (a - alpha1) / (a - pivot)

	if gap(corner) >= 0.0:
		return corner
	if gap(1.0) <= 0.0:
		return 1.0
	return float(brentq(gap, corner, 1.0, xtol=1e-14, rtol=1e-15, maxiter=500))


# sphere-mixture tightness instances
def _radius(alpha: float, n: int) -> int:
	return min(int(math.floor(inv_binary_entropy(alpha) * n)), n)


def _sphere_radius(alpha: float, n: int) -> int:
	"""Largest r <= n/2 with log2 C(n, r) <= alpha n, so the sphere carries entropy rate <= alpha at this n."""
	radii = np.arange(n // 2 + 1)
	fits = log_binomial(n, radii) / LN2 <= alpha * n + ANCHOR_TOL
	return int(radii[fits][-1])


def _validate_instance(q: float, eps: float, x: float, n: int, mode: EvaluationMode) -> None:
	context = {"q": q, "eps": eps, "x": x, "n": n}
	if not (0.0 < x < 1.0):
		raise ParamOutOfRangeError(f"x must lie in (0, 1), got {x}", context)
	if not (0.0 < eps < 0.5):
		raise ParamOutOfRangeError(f"eps must lie in (0, 1/2), got {eps}", context)
	if math.isnan(q) or math.isinf(q) or q <= 1.0:
		raise ParamOutOfRangeError(f"q must be a finite order > 1, got {q}", context)
	if n < 1:
		raise ParamOutOfRangeError(f"n must be positive, got {n}", context)
	cap = dimension_cap()
	if mode == EvaluationMode.EXPLICIT and n > cap:
		raise DimensionTooLargeError(f"explicit instances need n <= {cap}", context)


def _fit_rate(
	profile_for: Callable[[float], RadialProfile],
	lo: float,
	hi: float,
	q: float,
	x: float,
) -> Tuple[RadialProfile, float]:
	"""Parameter in [lo, hi] closest to the rate-x crossing with renyi_rate(q) <= x - RATE_MARGIN.

	The rate is expected to fall from lo to hi. If lo already fits it is returned;
	if hi does not fit, hi is returned and the caller has to lower the rate some other way.
	"""
	target = x - RATE_MARGIN

	def rate_gap(t: float) -> float:
		return profile_for(t).renyi_rate(q) - target

	if rate_gap(lo) <= 0.0:
		return profile_for(lo), lo
	if rate_gap(hi) > 0.0:
		return profile_for(hi), hi
	t = float(brentq(rate_gap, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=500))
	if rate_gap(t) > 0.0:
		# step toward hi in halving distances until the rate fits; hi itself fits
		for k in range(52, -1, -1):
			step = t + (hi - t) * 2.0 ** -k
			if rate_gap(step) <= 0.0:
				t = step
				break
	return profile_for(t), t


def _blend_with_constant(profile: RadialProfile, t: float) -> RadialProfile:
	"""(1 - t) f + t; the mean stays 1 and Ent_q does not increase in t."""
	if t <= 0.0:
		return profile
	keep = math.log2(1.0 - t) if t < 1.0 else -math.inf
	floor = math.log2(t)
	return RadialProfile(
		n=profile.n,
		radii=profile.radii,
		log2_values=tuple(float(np.logaddexp2(keep + lv, floor)) for lv in profile.log2_values),
		outside=(1.0 - t) * profile.outside + t,
	)


def _renyi2_profile(q: float, eps: float, x: float, n: int) -> Tuple[RadialProfile, float]:
	N = (q - 1.0) * x / q
	_, point = omega_max_phi_nu(q, N, eps)
	r = _radius(point.alpha, n)
	# delta ranges from complement value 0 (v = 1/mu) up to the constant function (v = 1)
	lo = point.nu + log_sphere_mass(n, r) / (LN2 * n)
	hi = point.nu

	def profile_for(delta: float) -> RadialProfile:
		return mean_one_profile(n, (r,), ((point.nu - delta) * n,))

	return _fit_rate(profile_for, lo, hi, q, x)


def _nhc_points(q: float, eps: float, x: float, n: int) -> List[Tuple[float, float]]:
	N = (q - 1.0) * x / q
	y = N + 1.0 / q
	q0 = q0_of(eps)
	if y <= 1.0 / q0:
		alpha1 = (1.0 / q0 - 1.0 / q - N) / (1.0 / q0 - 1.0 / q)
		theta = n ** -0.5
		return [(alpha1, (1.0 - alpha1) / q0), (1.0 - theta, theta)]
	if kappa_q_to_one(x, eps) >= q:
		return [(1.0 - x, x)]
	alpha0 = alpha0_solve(y, eps)
	return [(0.0, y), (alpha0, 1.0 - alpha0)]


def _nhc_profile(q: float, eps: float, x: float, n: int) -> Tuple[RadialProfile, float, float]:
	"""Level points moved onto spheres, then fitted to entropy rate x.

	All sphere log-values are lowered by a common shift per coordinate, from the
	point where the complement value is 0 up to the point where no sphere value
	exceeds 1. If the rate is still above x there, the profile is blended with
	the constant function. Returns (profile, shift, blend).
	"""
	levels: Dict[int, float] = {}
	for alpha, nu in _nhc_points(q, eps, x, n):
		r = _sphere_radius(alpha, n)
		levels[r] = max(levels.get(r, -math.inf), nu)
	radii = sorted(levels)
	nus = [levels[r] for r in radii]
	masses = [log_sphere_mass(n, r) for r in radii]
	lo = float(logsumexp([lm + nu * n * LN2 for lm, nu in zip(masses, nus)])) / (LN2 * n)
	hi = max(nus)

	def profile_for(shift: float) -> RadialProfile:
		return mean_one_profile(n, radii, [(nu - shift) * n for nu in nus])

	profile, shift = _fit_rate(profile_for, lo, hi, q, x)
	blend = 0.0
	if profile.renyi_rate(q) > x - RATE_MARGIN:
		base = profile
		profile, blend = _fit_rate(lambda t: _blend_with_constant(base, t), 0.0, 1.0, q, x)
	return profile, shift, blend


def _solve_exponent(log2_norm: Callable[[float], float], level: float, upper: float) -> float:
	"""p in [1, upper] with log2 ||f||_p = level; log2 ||f||_p is nondecreasing in p."""
	if log2_norm(1.0) >= level:
		return 1.0
	if log2_norm(upper) <= level:
		return upper
	return float(brentq(lambda p: log2_norm(p) - level, 1.0, upper, xtol=1e-13, rtol=1e-15, maxiter=500))


def tightness_instance(
	kind: TightnessKind | str,
	q: float,
	eps: float,
	x: float,
	n: int,
	mode: EvaluationMode | str = EvaluationMode.ANALYTIC,
) -> TightnessResult:
	kind = TightnessKind(kind)
	mode = EvaluationMode(mode)
	q, eps, x, n = float(q), float(eps), float(x), int(n)
	_validate_instance(q, eps, x, n, mode)
	smoothing = delta_of(eps)

	if kind == TightnessKind.RENYI2:
		profile, delta = _renyi2_profile(q, eps, x, n)
		function = profile.to_cube_function() if mode == EvaluationMode.EXPLICIT else None
		if function is None:
			rate = profile.renyi_rate(q)
			achieved = (profile.log2_noisy_inner(smoothing) - 2.0 * profile.log2_mean()) / n
		else:
			rate = renyi_entropy(function, q) / n
			achieved = renyi_entropy(noise_apply(function, eps), 2.0) / n
		target = psi_2q(x, eps, q)
		return TightnessResult(
			kind=kind,
			mode=mode,
			n=n,
			q=q,
			eps=eps,
			x=x,
			profile=profile,
			entropy_rate=rate,
			achieved=achieved,
			target=target,
			slack=target - achieved,
			delta=delta,
			function=function,
		)

	profile, shift, blend = _nhc_profile(q, eps, x, n)
	function = profile.to_cube_function() if mode == EvaluationMode.EXPLICIT else None
	if function is None:
		rate = profile.renyi_rate(q)
		log2_noisy = 0.5 * profile.log2_noisy_inner(smoothing)
		log2_norm = profile.log2_norm
	else:
		rate = renyi_entropy(function, q) / n
		log2_noisy = math.log2(lq_norm(noise_apply(function, eps), 2.0))

		def log2_norm(p: float) -> float:
			return math.log2(lq_norm(function, p))

	kappa = kappa_2q(min(max(rate, 0.0), 1.0), eps, q)
	achieved = _solve_exponent(log2_norm, log2_noisy, kappa)
	return TightnessResult(
		kind=kind,
		mode=mode,
		n=n,
		q=q,
		eps=eps,
		x=x,
		profile=profile,
		entropy_rate=rate,
		achieved=achieved,
		target=kappa_2q(x, eps, q),
		slack=(log2_norm(kappa) - log2_noisy) / n,
		delta=shift,
		kappa=kappa,
		blend=blend,
		function=function,
	)


def tightness_trend(
	kind: TightnessKind | str,
	q: float,
	eps: float,
	x: float,
	dimensions: Sequence[int],
	mode: EvaluationMode | str = EvaluationMode.ANALYTIC,
) -> List[TightnessResult]:
	return [tightness_instance(kind, q, eps, x, n, mode) for n in dimensions]
