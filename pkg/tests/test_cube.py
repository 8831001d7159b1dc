import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.cube import (
	CubeFunction,
	NoiseParam,
	ball_indicator,
	composed_noise,
	constant_function,
	dirichlet_form,
	dirichlet_form_spectral,
	distribution_renyi_entropy,
	inner_product,
	inner_product_noisy,
	inverse_walsh_transform,
	lq_norm,
	make_function,
	noise_apply,
	noise_apply_direct,
	point_mass,
	radial_function,
	renyi_entropy,
	shannon_ent,
	sphere_indicator,
	sphere_mixture,
	walsh_transform,
	weights,
)
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


@st.composite
def cube_functions(draw, max_n=5, nonnegative=False):
	n = draw(st.integers(min_value=1, max_value=max_n))
	low = 0.0 if nonnegative else -10.0
	values = draw(
		st.lists(
			st.floats(min_value=low, max_value=10.0, allow_nan=False, allow_infinity=False),
			min_size=1 << n,
			max_size=1 << n,
		)
	)
	return make_function(n, values)


def _positive(n, seed=0):
	rng = np.random.default_rng(seed)
	return make_function(n, rng.uniform(0.1, 5.0, size=1 << n))


# construction
def test_make_function_rejects_wrong_length():
	with pytest.raises(LengthMismatchError):
		make_function(3, [1.0] * 7)


def test_make_function_rejects_non_finite_values():
	with pytest.raises(NonFiniteValueError):
		make_function(1, [1.0, math.nan])


def test_make_function_respects_dimension_cap(monkeypatch):
	monkeypatch.setenv("CUBE_MAX_N", "4")
	with pytest.raises(DimensionTooLargeError):
		make_function(5, np.ones(32))


def test_function_values_are_read_only():
	f = make_function(2, [1.0, 2.0, 3.0, 4.0])
	with pytest.raises(ValueError):
		f.values[0] = 7.0


def test_function_dict_round_trip_keeps_values():
	f = make_function(2, [0.5, 0.0, 1.5, 2.0])
	restored = CubeFunction.from_dict(f.to_dict())
	assert restored.n == 2
	assert np.array_equal(restored.values, f.values)
	assert restored.nonnegative


def test_noise_param_range():
	assert NoiseParam(0.25).rho == pytest.approx(0.5)
	with pytest.raises(DomainError):
		NoiseParam(0.6)


def test_weights_count_ones():
	assert list(weights(3)) == [0, 1, 1, 2, 1, 2, 2, 3]


# spectrum and noise
@settings(max_examples=40, deadline=None)
@given(f=cube_functions())
def test_walsh_transform_is_invertible_and_orthonormal(f):
	spectrum = walsh_transform(f)
	back = inverse_walsh_transform(spectrum)
	assert np.allclose(back.values, f.values, atol=1e-9)
	assert spectrum.energy() == pytest.approx(float(np.mean(f.values ** 2)), rel=1e-9, abs=1e-12)
	assert spectrum.level_weights().sum() == pytest.approx(spectrum.energy(), rel=1e-12, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(f=cube_functions(max_n=6), eps=st.floats(min_value=0.0, max_value=0.5))
def test_spectral_noise_matches_direct_convolution(f, eps):
	fast = noise_apply(f, eps)
	slow = noise_apply_direct(f, eps)
	scale = max(1.0, float(np.max(np.abs(f.values))))
	assert np.allclose(fast.values, slow.values, atol=1e-10 * scale)


@settings(max_examples=40, deadline=None)
@given(
	f=cube_functions(),
	a=st.floats(min_value=0.0, max_value=0.45),
	b=st.floats(min_value=0.0, max_value=0.45),
)
def test_noise_semigroup(f, a, b):
	twice = noise_apply(noise_apply(f, a), b)
	once = noise_apply(f, composed_noise(a, b))
	scale = max(1.0, float(np.max(np.abs(f.values))))
	assert np.allclose(twice.values, once.values, atol=1e-10 * scale)


def test_noise_preserves_mean_and_flattens_at_half():
	f = _positive(4, seed=3)
	assert noise_apply(f, 0.2).mean() == pytest.approx(f.mean(), rel=1e-12)
	flat = noise_apply(f, 0.5)
	assert flat.is_constant(tol=1e-12)
	assert flat.mean() == pytest.approx(f.mean(), rel=1e-12)
	assert noise_apply(f, 0.0) is f


def test_noise_keeps_nonnegative_functions_nonnegative():
	f = point_mass(6)
	smoothed = noise_apply(f, 0.01)
	assert smoothed.nonnegative
	assert np.all(smoothed.values >= 0.0)


def test_direct_convolution_is_limited_to_small_cubes(monkeypatch):
	monkeypatch.setenv("CUBE_MAX_N", "12")
	with pytest.raises(DimensionTooLargeError):
		noise_apply_direct(constant_function(11), 0.1)


# norms and entropies
def test_norms_are_monotone_in_order():
	f = _positive(5, seed=1)
	orders = [1.0, 1.5, 2.0, 3.0, 8.0]
	norms = [lq_norm(f, p) for p in orders]
	assert all(b >= a - 1e-12 for a, b in zip(norms, norms[1:]))
	assert norms[0] == pytest.approx(f.mean(), rel=1e-12)


def test_norm_rejects_orders_below_one():
	with pytest.raises(InvalidOrderError):
		lq_norm(constant_function(2), 0.5)


def test_point_mass_has_full_entropy():
	n = 6
	f = point_mass(n)
	assert f.mean() == pytest.approx(1.0)
	assert shannon_ent(f) == pytest.approx(n, rel=1e-12)
	for q in (1.5, 2.0, 4.0):
		assert renyi_entropy(f, q) == pytest.approx(n, rel=1e-12)


def test_constant_function_has_zero_entropy():
	f = constant_function(4, 3.0)
	assert shannon_ent(f) == pytest.approx(0.0, abs=1e-12)
	assert renyi_entropy(f, 2.0) == pytest.approx(0.0, abs=1e-12)


def test_renyi_entropy_is_scale_invariant_only_when_normalized():
	f = _positive(3, seed=5)
	scaled = f.scaled(8.0)
	assert renyi_entropy(scaled, 2.0) == pytest.approx(renyi_entropy(f, 2.0), abs=1e-12)
	raw_gap = renyi_entropy(scaled, 2.0, normalize=False) - renyi_entropy(f, 2.0, normalize=False)
	assert raw_gap == pytest.approx(2.0 * 3.0, abs=1e-12)


def test_entropy_errors():
	with pytest.raises(NegativeValueError):
		shannon_ent(make_function(1, [-1.0, 2.0]))
	with pytest.raises(ZeroFunctionError):
		renyi_entropy(make_function(2, np.zeros(4)), 2.0)
	with pytest.raises(InvalidOrderError):
		renyi_entropy(constant_function(2), 1.0)


def test_distribution_entropy_of_uniform_and_point():
	n = 4
	uniform = np.full(1 << n, 1.0 / (1 << n))
	assert distribution_renyi_entropy(uniform, 2.0) == pytest.approx(n, abs=1e-12)
	assert distribution_renyi_entropy(uniform, 1.0) == pytest.approx(n, abs=1e-12)
	point = np.zeros(1 << n)
	point[5] = 1.0
	assert distribution_renyi_entropy(point, 3.0) == pytest.approx(0.0, abs=1e-12)


# inner products and Dirichlet form
def test_noisy_inner_product_of_point_mass():
	n, eps = 5, 0.2
	f = point_mass(n)
	expected = (1.0 - eps) ** n * lq_norm(f, 2.0) ** 2
	assert inner_product_noisy(f, eps) == pytest.approx(expected, rel=1e-12)
	assert inner_product(noise_apply(f, eps), f) == pytest.approx(expected, rel=1e-10)


@settings(max_examples=30, deadline=None)
@given(f=cube_functions())
def test_dirichlet_form_edge_sum_matches_spectrum(f):
	edge = dirichlet_form(f, f)
	spectral = dirichlet_form_spectral(f, f)
	assert edge == pytest.approx(spectral, rel=1e-9, abs=1e-9)
	assert edge >= -1e-12


def test_dimension_mismatch_is_rejected():
	with pytest.raises(DimensionMismatchError):
		inner_product(constant_function(2), constant_function(3))


# named functions
def test_sphere_and_ball_indicators():
	n = 5
	assert sphere_indicator(n, 2).values.sum() == math.comb(n, 2)
	assert ball_indicator(n, 1).values.sum() == 1 + n
	with pytest.raises(RadiusOutOfRangeError):
		sphere_indicator(n, 6)


def test_sphere_mixture_has_mean_one():
	f = sphere_mixture(6, 2, 3.0)
	assert f.mean() == pytest.approx(1.0, abs=1e-12)
	assert set(np.unique(f.values[weights(6) == 2])) == {3.0}


def test_sphere_mixture_rejects_mass_overflow():
	with pytest.raises(MassOverflowError):
		sphere_mixture(4, 2, 3.0)


def test_radial_function_reads_levels_by_weight():
	f = radial_function(3, [1.0, 2.0, 3.0, 4.0])
	assert list(f.values) == [1.0, 2.0, 2.0, 3.0, 2.0, 3.0, 3.0, 4.0]
	with pytest.raises(LengthMismatchError):
		radial_function(3, [1.0, 2.0])
