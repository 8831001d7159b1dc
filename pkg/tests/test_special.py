import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from core.errors import DomainError, SlopeOutOfRangeError, TargetOutOfRangeError
from core.special import (
	LN2,
	BoundParams,
	alpha0_solve,
	binary_entropy,
	dphi_deps,
	dphi_deps_at_zero,
	eps_threshold,
	g_curve,
	inv_binary_entropy,
	kappa_2q,
	kappa_q_to_one,
	kappa_q_two,
	log_sobolev_C,
	mgl_psi,
	mgl_psi_boundary,
	phi_eps,
	phi_prime,
	phi_prime_ceiling,
	phi_prime_inv,
	phi_ratio,
	psi_2q,
	q0_of,
	x_threshold,
	y_coupling,
)

GRID = np.linspace(0.0, 1.0, 101)
FINE_GRID = np.linspace(0.0, 1.0, 1001)
INTERIOR_EPS = [0.05, 0.1, 0.25, 0.4]


def test_phi_endpoint_identities_on_grid():
	for x in GRID:
		assert phi_eps(float(x), 0.0) == pytest.approx((x - 1.0) / 2.0, abs=1e-10)
		assert phi_eps(float(x), 0.5) == pytest.approx(x - 1.0, abs=1e-10)


@pytest.mark.parametrize("eps", INTERIOR_EPS)
def test_phi_slope_runs_from_one_to_inverse_q0(eps):
	assert phi_prime(0.0, eps) == pytest.approx(1.0, abs=1e-5)
	assert phi_prime(1.0, eps) == pytest.approx(1.0 / q0_of(eps), abs=1e-5)


@pytest.mark.parametrize("eps", INTERIOR_EPS)
def test_phi_is_increasing_concave_and_vanishes_at_one(eps):
	values = np.array([phi_eps(float(x), eps) for x in GRID])
	assert values[-1] == pytest.approx(0.0, abs=1e-12)
	assert np.all(np.diff(values) > 0.0)
	assert np.all(np.diff(values, 2) < 1e-12)
	assert np.all(values <= 0.0)


def test_phi_at_zero_matches_closed_form():
	eps = 0.25
	assert phi_eps(0.0, eps) == pytest.approx(-0.5 * math.log2(4.0 / q0_of(eps)), abs=1e-12)


@pytest.mark.parametrize("eps", INTERIOR_EPS)
@pytest.mark.parametrize("x", [0.2, 0.5, 0.8])
def test_envelope_slope_agrees_with_central_difference(x, eps):
	exact = phi_prime(x, eps)
	approx = phi_prime(x, eps, method="finite_difference")
	assert exact == pytest.approx(approx, abs=1e-6)


@settings(max_examples=60, deadline=None)
@given(
	eps=st.floats(min_value=0.05, max_value=0.45),
	fraction=st.floats(min_value=0.0, max_value=1.0),
)
def test_slope_inverse_round_trip(eps, fraction):
	lo = 1.0 / q0_of(eps) + 0.01
	s = lo + fraction * (0.99 - lo)
	alpha = phi_prime_inv(s, eps)
	assert 0.0 <= alpha <= 1.0
	assert phi_prime(alpha, eps) == pytest.approx(s, abs=1e-8)


def test_slope_inverse_rejects_slopes_outside_range():
	with pytest.raises(SlopeOutOfRangeError):
		phi_prime_inv(0.5, 0.1)
	with pytest.raises(SlopeOutOfRangeError):
		phi_prime_inv(1.2, 0.1)


@pytest.mark.parametrize("eps", [0.1, 0.2, 0.3])
@pytest.mark.parametrize("x", [0.3, 0.5, 0.9])
def test_eps_derivative_matches_difference_quotient(x, eps):
	h = 1e-6
	numeric = (phi_eps(x, eps + h) - phi_eps(x, eps - h)) / (2.0 * h)
	assert dphi_deps(x, eps) == pytest.approx(numeric, abs=1e-5)


@pytest.mark.parametrize("x", [0.2, 0.5, 0.8])
def test_eps_derivative_is_continuous_at_zero_noise(x):
	assert dphi_deps(x, 1e-6) == pytest.approx(dphi_deps_at_zero(x), abs=1e-4)
	assert dphi_deps(x, 0.0) == dphi_deps_at_zero(x)
	assert dphi_deps_at_zero(x) < 0.0


@settings(max_examples=80, deadline=None)
@given(x=st.floats(min_value=0.0, max_value=1.0))
def test_binary_entropy_inverts(x):
	sigma = inv_binary_entropy(x)
	assert 0.0 <= sigma <= 0.5
	assert binary_entropy(sigma) == pytest.approx(x, abs=1e-9)


def test_coupling_is_continuous_at_half():
	x = 0.6
	sigma = inv_binary_entropy(x)
	assert y_coupling(x, 0.5) == pytest.approx(sigma * (1.0 - sigma), abs=1e-15)
	assert y_coupling(x, 0.5 - 1e-9) == pytest.approx(sigma * (1.0 - sigma), abs=1e-8)


@pytest.mark.parametrize("eps", INTERIOR_EPS)
def test_alpha0_solves_g_curve(eps):
	q0 = q0_of(eps)
	for y in np.linspace(1.0 / q0 + 1e-3, 1.0 - 1e-3, 15):
		alpha = alpha0_solve(float(y), eps)
		assert g_curve(alpha, eps) == pytest.approx(float(y), abs=1e-10)


def test_alpha0_rejects_target_below_inverse_q0():
	with pytest.raises(TargetOutOfRangeError):
		alpha0_solve(0.5, 0.1)


def test_kappa_endpoint_identities():
	for x in GRID[::10]:
		x = float(x)
		assert kappa_2q(x, 0.0, 2.0) == pytest.approx(2.0, abs=1e-9)
		assert kappa_2q(x, 0.5, 3.0) == pytest.approx(1.0, abs=1e-9)
	for eps in INTERIOR_EPS:
		assert kappa_2q(0.0, eps, 2.0) == pytest.approx(q0_of(eps), abs=1e-9)


def test_kappa_at_zero_rate_example():
	assert kappa_2q(0.0, 0.1, 2.0) == pytest.approx(1.64, abs=1e-12)


@pytest.mark.parametrize("eps", INTERIOR_EPS)
def test_kappa_q_two_matches_general_formula(eps):
	for x in GRID[::5]:
		assert kappa_q_two(float(x), eps) == pytest.approx(kappa_2q(float(x), eps, 2.0), rel=1e-12)


@pytest.mark.parametrize("x", [0.1, 0.4, 0.7])
def test_kappa_near_q_one_approaches_q_one_limit(x):
	eps = 0.2
	assert kappa_2q(x, eps, 1.0 + 1e-6) == pytest.approx(kappa_q_to_one(x, eps), abs=1e-3)


def test_kappa_is_flat_until_threshold_then_decreasing():
	eps, q = 0.1, 3.0
	q0 = q0_of(eps)
	threshold = x_threshold(q, eps)
	xs = [float(x) for x in np.linspace(0.0, 1.0, 101)]
	values = [kappa_2q(x, eps, q) for x in xs]
	for x, value in zip(xs, values):
		assert 1.0 - 1e-12 <= value <= q0 + 1e-12
		if x <= threshold - 1e-9:
			assert value == pytest.approx(q0, abs=1e-12)
	after = [value for x, value in zip(xs, values) if x > threshold]
	assert after[-1] < q0 - 1e-3
	assert all(b <= a + 1e-10 for a, b in zip(after, after[1:]))


@pytest.mark.parametrize("eps", [0.05, 0.2, 0.4])
def test_psi_is_increasing_and_concave(eps):
	values = np.array([psi_2q(float(x), eps, 2.0) for x in GRID])
	assert np.all(np.diff(values) >= -1e-12)
	assert np.all(np.diff(values, 2) <= 1e-9)


def test_mgl_psi_sits_below_linear_bound():
	for eps in [0.0, 0.1, 0.3, 0.5]:
		for x in GRID[::4]:
			x = float(x)
			assert mgl_psi(x, eps) <= (1.0 - 2.0 * eps) ** 2 * x + 1e-12



def test_psi_branches_meet_where_the_slope_is_inverse_q():
	eps, q = 0.1, 1.3
	x_switch = brentq(lambda x: phi_prime(1.0 - x, eps) - 1.0 / q, 0.0, 1.0, xtol=1e-14)
	below = psi_2q(x_switch - 1e-9, eps, q)
	above = psi_2q(x_switch + 1e-9, eps, q)
	assert below == pytest.approx(above, abs=1e-7)
	assert above == pytest.approx(2.0 * (phi_eps(1.0 - x_switch, eps) + x_switch), abs=1e-7)


def test_kappa_branches_meet_where_the_corner_value_is_q():
	eps, q = 0.1, 1.6
	x_switch = brentq(lambda x: kappa_q_to_one(x, eps) - q, 1e-6, 1.0, xtol=1e-14)
	corner_side = kappa_2q(x_switch - 1e-8, eps, q)
	solver_side = kappa_2q(x_switch + 1e-8, eps, q)
	assert corner_side == pytest.approx(q, abs=1e-5)
	assert solver_side == pytest.approx(q, abs=1e-5)


def test_log_sobolev_constant_range():
	assert log_sobolev_C(0.0) == pytest.approx(2.0 * LN2, abs=1e-3)
	assert log_sobolev_C(1.0) == pytest.approx(2.0, abs=1e-3)
	for x in GRID:
		assert 2.0 * LN2 - 1e-12 <= log_sobolev_C(float(x)) <= 2.0 + 1e-12


def test_log_sobolev_constant_is_increasing_and_convex():
	values = np.array([log_sobolev_C(float(x)) for x in FINE_GRID])
	assert np.all(np.diff(values) > 0.0)
	assert np.all(np.diff(values, 2) >= -1e-9)


@pytest.mark.parametrize("x", [1e-6, 1e-5])
def test_log_sobolev_constant_leaves_two_ln2_linearly(x):
	# C(x) = 2 ln2 + (ln2)^2 x / 3 + O(x^2) near 0
	assert log_sobolev_C(x) > 2.0 * LN2
	assert log_sobolev_C(x) - 2.0 * LN2 == pytest.approx(LN2 * LN2 * x / 3.0, rel=1e-2)


@pytest.mark.parametrize("q", [1.1, 1.5, 1.9])
def test_eps_threshold_puts_q0_at_q(q):
	assert q0_of(eps_threshold(q)) == pytest.approx(q, abs=1e-12)
	assert eps_threshold(2.5) == 0.0


def test_domain_errors_name_the_violated_bound():
	with pytest.raises(DomainError, match="x must lie in"):
		phi_eps(1.5, 0.1)
	with pytest.raises(DomainError, match="eps must lie in"):
		psi_2q(0.5, 0.6, 2.0)
	with pytest.raises(DomainError):
		BoundParams(x=0.5, eps=0.1, q=1.0)


def test_bound_params_derived_fields():
	params = BoundParams(x=0.5, eps=0.1, q=2.0)
	data = params.to_dict()
	assert data["q0"] == pytest.approx(1.64)
	assert data["y_def"] == pytest.approx(0.75)
	assert binary_entropy(data["sigma"]) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("eps", INTERIOR_EPS)
def test_phi_ratio_increases_and_g_decreases(eps):
	ratios = np.array([phi_ratio(float(a), eps) for a in FINE_GRID])
	g = np.array([g_curve(float(a), eps) for a in FINE_GRID])
	assert np.all(np.diff(ratios) >= -1e-12)
	assert ratios[0] == pytest.approx(2.0 / math.log2(4.0 / q0_of(eps)), abs=1e-9)
	assert ratios[-1] == pytest.approx(q0_of(eps))
	assert np.all(np.diff(g) <= 1e-10)
	assert g[-1] == pytest.approx(1.0 / q0_of(eps))


@pytest.mark.parametrize("eps", np.linspace(0.0, 0.5, 11).tolist())
def test_gerber_bound_vanishes_at_zero_with_slope_one_minus_two_eps_squared(eps):
	value, slope = mgl_psi_boundary(eps)
	assert abs(value) <= 1e-15
	assert slope == pytest.approx((1.0 - 2.0 * eps) ** 2, abs=1e-5)


@pytest.mark.parametrize("eps", [0.05, 0.1, 0.25, 0.45])
def test_slope_inverse_floors_steep_slopes_at_zero(eps):
	ceiling = phi_prime_ceiling(eps)
	assert 0.0 < 1.0 - ceiling < 1e-2
	assert phi_prime_inv(0.5 * (1.0 + ceiling), eps) == 0.0
	assert phi_prime_inv(ceiling - 1e-4, eps) > 0.0
