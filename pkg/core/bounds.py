"""Inequality checks on concrete cube functions.

Every check returns a CheckReport; a violated inequality is reported through
``passed`` and never raised. Entropies and norms are taken of |f| while the
noise operator acts on f itself.
"""

from __future__ import annotations

import math
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.sparse import coo_matrix, identity
from scipy.sparse.csgraph import connected_components

from core.cube import (
	CubeFunction,
	Noise,
	as_noise,
	composed_noise,
	dirichlet_form,
	inner_product_noisy,
	lq_norm,
	make_function,
	noise_apply,
	renyi_entropy,
	shannon_ent,
	sphere_indicator,
)
from core.enums import CheckName
from core.errors import (
	ConstantFunctionError,
	DomainError,
	EmptySetError,
	FullCubeError,
	InvalidOrderError,
	NegativeValueError,
	RadiusOutOfRangeError,
	ZeroFunctionError,
)
from core.models.report import CheckReport, make_report
from core.special import (
	LN2,
	big_phi,
	inv_binary_entropy,
	kappa_2q,
	kappa_q_to_one,
	log_sobolev_C,
	mgl_psi,
	psi_2q,
	q0_of,
)

POWER_ITERATION_CAP = 100_000
POWER_ITERATION_TOL = 1e-13
DOMINANCE_TOL = 1e-12
SEMIGROUP_TOL = 1e-12


def _order(q: float) -> float:
	q = float(q)
	if math.isnan(q) or math.isinf(q) or q <= 1.0:
		raise InvalidOrderError(f"order must be a finite q > 1, got {q}", {"q": q})
	return q


def _require_nonzero(f: CubeFunction) -> None:
	if not np.any(f.values != 0.0):
		raise ZeroFunctionError("the zero function has no entropy", {"n": f.n})


def _require_nonnegative(f: CubeFunction) -> None:
	if not f.nonnegative:
		raise NegativeValueError("this inequality needs a nonnegative function", {"n": f.n})
	_require_nonzero(f)


def _unit(value: float) -> float:
	return min(max(float(value), 0.0), 1.0)


def _params(f: CubeFunction, **extra: Any) -> Dict[str, Any]:
	params: Dict[str, Any] = {"n": f.n}
	params.update(extra)
	return params


def renyi_rate(f: CubeFunction, q: float) -> float:
	"""x(q) = Ent_q(|f| / ||f||_1) / n, with the Shannon entropy at q = 1."""
	_require_nonzero(f)
	if f.n == 0:
		return 0.0
	g = f if f.nonnegative else f.abs()
	if float(q) == 1.0:
		return _unit(shannon_ent(g) / (f.n * g.mean()))
	return _unit(renyi_entropy(g, _order(q)) / f.n)


def renyi_rate_curve(f: CubeFunction, qs: Sequence[float]) -> List[Tuple[float, float, float]]:
	"""(q, x(q), y(q)) with y(q) = (q - 1) x(q) / q + 1 / q."""
	rows = []
	for q in qs:
		x = renyi_rate(f, q)
		q = float(q)
		rows.append((q, x, (q - 1.0) * x / q + 1.0 / q))
	return rows


# classical hypercontractive baseline
def check_hc_baseline(f: CubeFunction, eps: Noise, q: float) -> CheckReport:
	e = as_noise(eps)
	q = _order(q)
	p = 1.0 + (1.0 - 2.0 * e) ** 2 * (q - 1.0)
	lhs = lq_norm(noise_apply(f, e), q)
	rhs = lq_norm(f, p)
	return make_report(CheckName.HC_BASELINE.value, _params(f, eps=e, q=q), lhs, rhs, log_scale=True, p=p)


# entropy under noise
def check_mgl(f: CubeFunction, eps: Noise) -> CheckReport:
	e = as_noise(eps)
	_require_nonnegative(f)
	ent = shannon_ent(f)
	lhs = shannon_ent(noise_apply(f, e))
	if f.n == 0:
		x, rhs = 0.0, 0.0
	else:
		x = _unit(ent / (f.n * f.mean()))
		rhs = f.n * f.mean() * mgl_psi(x, e)
	linear_rhs = (1.0 - 2.0 * e) ** 2 * ent
	return make_report(
		CheckName.MGL.value,
		_params(f, eps=e),
		lhs,
		rhs,
		x=x,
		linear_rhs=linear_rhs,
		within_linear=bool(rhs <= linear_rhs + 1e-12 * max(1.0, abs(linear_rhs))),
	)


def check_mgl_linear(f: CubeFunction, eps: Noise) -> CheckReport:
	e = as_noise(eps)
	_require_nonnegative(f)
	lhs = shannon_ent(noise_apply(f, e))
	rhs = (1.0 - 2.0 * e) ** 2 * shannon_ent(f)
	return make_report(CheckName.MGL_LINEAR.value, _params(f, eps=e), lhs, rhs)


def check_renyi2_mgl(f: CubeFunction, eps: Noise, q: float) -> CheckReport:
	e = as_noise(eps)
	q = _order(q)
	_require_nonnegative(f)
	x = renyi_rate(f, q)
	if f.n == 0:
		lhs = 0.0
	else:
		lhs = renyi_entropy(noise_apply(f, e), 2.0) / f.n
	rhs = psi_2q(x, e, q)
	return make_report(CheckName.RENYI2_MGL.value, _params(f, eps=e, q=q), lhs, rhs, x=x)


# improved hypercontractivity
def kappa_for(f: CubeFunction, eps: Noise, q: float) -> float:
	return kappa_2q(renyi_rate(f, q), as_noise(eps), _order(q))


def check_nhc(f: CubeFunction, eps: Noise, q: float) -> CheckReport:
	e = as_noise(eps)
	q = _order(q)
	x = renyi_rate(f, q)
	kappa = kappa_2q(x, e, q)
	q0 = q0_of(e)
	lhs = lq_norm(noise_apply(f, e), 2.0)
	rhs = lq_norm(f, kappa)
	baseline = lq_norm(f, q0)
	dominance = math.log2(rhs) - math.log2(baseline)
	return make_report(
		CheckName.NHC.value,
		_params(f, eps=e, q=q),
		lhs,
		rhs,
		log_scale=True,
		x=x,
		kappa=kappa,
		q0=q0,
		baseline_rhs=baseline,
		dominance_log2=dominance,
		dominates_baseline=bool(dominance <= DOMINANCE_TOL),
	)


def best_q(f: CubeFunction, eps: Noise) -> float:
	"""Fixed point q* = -x(q*) / phi_eps(1 - x(q*)) on [1, q0]."""
	e = as_noise(eps)
	if not (0.0 < e < 0.5):
		raise DomainError(f"best_q needs 0 < eps < 1/2, got {e}", {"eps": e})
	_require_nonnegative(f)
	if f.is_constant():
		raise ConstantFunctionError("constant functions have no entropy to trade", {"n": f.n})
	q0 = q0_of(e)

	def gap(q: float) -> float:
		return kappa_q_to_one(renyi_rate(f, q), e) - q

	if gap(q0) >= 0.0:
		return q0
	if gap(1.0) <= 0.0:
		return 1.0
	return float(brentq(gap, 1.0, q0, xtol=1e-13, rtol=1e-15, maxiter=500))


# log-Sobolev
def check_log_sobolev(f: CubeFunction) -> CheckReport:
	_require_nonzero(f)
	g = f if f.nonnegative else f.abs()
	x = _unit(renyi_entropy(g, 2.0) / f.n) if f.n else 0.0
	constant = log_sobolev_C(x)
	squared = make_function(f.n, f.values * f.values)
	ent = shannon_ent(squared)
	lhs = dirichlet_form(f, f)
	rhs = constant * ent
	gross = 2.0 * LN2 * ent
	return make_report(
		CheckName.LOG_SOBOLEV.value,
		_params(f),
		lhs,
		rhs,
		x=x,
		constant=constant,
		gross_rhs=gross,
		constant_dominates=bool(constant >= 2.0 * LN2 - DOMINANCE_TOL),
	)


# eigenvalues of induced subgraphs
def _point_set(points: Iterable[int], n: int) -> np.ndarray:
	n = int(n)
	array = np.unique(np.asarray(list(points), dtype=np.int64))
	if array.size == 0:
		raise EmptySetError("the point set is empty", {"n": n})
	if array[0] < 0 or array[-1] >= (1 << n):
		raise RadiusOutOfRangeError(f"points must be vertices of the {n}-cube", {"n": n})
	if array.size == (1 << n):
		raise FullCubeError("the point set covers the whole cube", {"n": n})
	return array


def _induced_adjacency(points: np.ndarray, n: int):
	rows: List[np.ndarray] = []
	cols: List[np.ndarray] = []
	for bit in range(n):
		neighbours = points ^ (1 << bit)
		slots = np.searchsorted(points, neighbours)
		slots = np.minimum(slots, points.size - 1)
		present = points[slots] == neighbours
		rows.append(np.nonzero(present)[0])
		cols.append(slots[present])
	row = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
	col = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
	data = np.ones(row.size)
	return coo_matrix((data, (row, col)), shape=(points.size, points.size)).tocsr()


def _power_iteration(matrix) -> float:
	"""Largest eigenvalue of a connected induced subgraph.

	The graphs are bipartite, so -lambda is also an eigenvalue; iterating on
	M + I makes lambda + 1 strictly dominant.
	"""
	size = matrix.shape[0]
	if size == 1:
		return 0.0
	shifted = matrix + identity(size, format="csr")
	vector = np.full(size, 1.0 / math.sqrt(size))
	rayleigh = 0.0
	for _ in range(POWER_ITERATION_CAP):
		image = shifted @ vector
		updated = float(vector @ image)
		vector = image / np.linalg.norm(image)
		if abs(updated - rayleigh) <= POWER_ITERATION_TOL * max(updated, 1.0):
			rayleigh = updated
			break
		rayleigh = updated
	return rayleigh - 1.0


def max_eigenvalue(points: Iterable[int], n: int) -> float:
	"""lambda(A): top eigenvalue of the adjacency matrix induced on A."""
	array = _point_set(points, n)
	matrix = _induced_adjacency(array, int(n))
	count, labels = connected_components(matrix, directed=False)
	best = 0.0
	for component in range(count):
		members = np.nonzero(labels == component)[0]
		if members.size < 2:
			continue
		best = max(best, _power_iteration(matrix[members][:, members]))
	return best


def _eigen_inputs(points: Iterable[int], n: int) -> Tuple[int, float, float]:
	array = _point_set(points, n)
	log_ratio = n - math.log2(array.size)
	return int(array.size), log_ratio, max_eigenvalue(array, n)


def eigen_bound_check(points: Iterable[int], n: int) -> CheckReport:
	"""lambda(A) <= n - C(x_A) log2(2^n / |A|) / 2, x_A = log2(2^n / |A|) / n."""
	n = int(n)
	size, log_ratio, lam = _eigen_inputs(points, n)
	x = _unit(log_ratio / n)
	constant = log_sobolev_C(x)
	drop = 0.5 * constant * log_ratio
	return make_report(
		CheckName.EIGEN_BOUND.value,
		{"n": n, "size": size},
		lam,
		n - drop,
		x=x,
		constant=constant,
		log2_ratio=log_ratio,
		deficit_ratio=(n - lam) / drop,
		gross_rhs=n - LN2 * log_ratio,
	)


def check_eigen_gross(points: Iterable[int], n: int) -> CheckReport:
	n = int(n)
	size, log_ratio, lam = _eigen_inputs(points, n)
	improved = n - 0.5 * log_sobolev_C(_unit(log_ratio / n)) * log_ratio
	return make_report(
		CheckName.EIGEN_GROSS.value,
		{"n": n, "size": size},
		lam,
		n - LN2 * log_ratio,
		improved_rhs=improved,
	)


# bounded support
def check_bounded_support(f: CubeFunction, eps: Noise) -> CheckReport:
	e = as_noise(eps)
	_require_nonzero(f)
	support = f.support_size()
	x = _unit(math.log2(support) / f.n) if f.n else 0.0
	exponent = (2.0 * big_phi(x, e) + 1.0 - x) * f.n
	lhs = inner_product_noisy(f, e)
	rhs = 2.0 ** exponent * lq_norm(f, 2.0) ** 2
	return make_report(
		CheckName.BOUNDED_SUPPORT.value,
		_params(f, eps=e),
		lhs,
		rhs,
		log_scale=True,
		x=x,
		support=support,
	)


def sphere_support_exponent(n: int, x: float, eps: Noise) -> float:
	"""Empirical c with lhs = rhs * n^-c for the sphere of radius H^{-1}(x) n."""
	n = int(n)
	if n < 2:
		raise DomainError("the exponent needs n >= 2", {"n": n})
	r = int(round(inv_binary_entropy(x) * n))
	report = check_bounded_support(sphere_indicator(n, r), eps)
	return math.log(report.rhs / report.lhs) / math.log(n)


def check_semigroup(f: CubeFunction, eps1: Noise, eps2: Noise) -> CheckReport:
	"""max |T_eps2 T_eps1 f - T_{eps1 * eps2} f| against a scale-aware tolerance."""
	a = as_noise(eps1)
	b = as_noise(eps2)
	twice = noise_apply(noise_apply(f, a), b)
	once = noise_apply(f, composed_noise(a, b))
	deviation = float(np.max(np.abs(twice.values - once.values)))
	tolerance = SEMIGROUP_TOL * max(1.0, float(np.max(np.abs(f.values))))
	return make_report(CheckName.SEMIGROUP.value, _params(f, eps1=a, eps2=b), deviation, tolerance)


def evaluate_check(
	name: CheckName | str,
	f: CubeFunction,
	eps: Optional[float] = None,
	q: Optional[float] = None,
) -> CheckReport:
	"""Dispatch one function-level check by name."""
	check = CheckName(name)
	if check == CheckName.LOG_SOBOLEV:
		return check_log_sobolev(f)
	if eps is None:
		raise DomainError(f"check '{check.value}' needs eps")
	if check == CheckName.MGL:
		return check_mgl(f, eps)
	if check == CheckName.MGL_LINEAR:
		return check_mgl_linear(f, eps)
	if check == CheckName.BOUNDED_SUPPORT:
		return check_bounded_support(f, eps)
	if q is None:
		raise DomainError(f"check '{check.value}' needs q")
	if check == CheckName.HC_BASELINE:
		return check_hc_baseline(f, eps, q)
	if check == CheckName.RENYI2_MGL:
		return check_renyi2_mgl(f, eps, q)
	if check == CheckName.NHC:
		return check_nhc(f, eps, q)
	raise DomainError(f"check '{check.value}' does not take a single function")
