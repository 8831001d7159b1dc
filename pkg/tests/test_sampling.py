import math

import numpy as np
import pytest

from core.cube import weights
from core.enums import FunctionModel
from core.errors import UnknownModelError
from engine.sampling import model_generator, random_function, resolve_model


@pytest.mark.parametrize("model", list(FunctionModel))
def test_same_key_gives_same_function(model):
    first = random_function(5, model, seed=42, sample=3)
    second = random_function(5, model.value, seed=42, sample=3)
    assert np.array_equal(first.values, second.values)


def test_streams_do_not_depend_on_evaluation_order():
    forward = [random_function(4, "log_uniform", 7, sample) for sample in range(4)]
    backward = [random_function(4, "log_uniform", 7, sample) for sample in reversed(range(4))]
    for a, b in zip(forward, reversed(backward)):
        assert np.array_equal(a.values, b.values)


def test_different_keys_give_different_streams():
    base = model_generator(42, 4, FunctionModel.SPARSE, 0).random(4)
    assert not np.array_equal(base, model_generator(43, 4, FunctionModel.SPARSE, 0).random(4))
    assert not np.array_equal(base, model_generator(42, 5, FunctionModel.SPARSE, 0).random(4))
    assert not np.array_equal(base, model_generator(42, 4, FunctionModel.PRODUCT, 0).random(4))
    assert not np.array_equal(base, model_generator(42, 4, FunctionModel.SPARSE, 1).random(4))


@pytest.mark.parametrize("n", [1, 4, 7])
def test_sparse_support_size(n):
    f = random_function(n, FunctionModel.SPARSE, seed=1)
    assert f.support_size() == 2 ** math.ceil(n / 2)
    assert f.nonnegative


@pytest.mark.parametrize("sample", range(5))
def test_sphere_mixture_has_mean_one(sample):
    f = random_function(6, FunctionModel.SPHERE_MIXTURE, seed=3, sample=sample)
    assert f.mean() == pytest.approx(1.0, abs=1e-12)
    assert f.nonnegative


def test_product_model_depends_only_on_weight():
    n = 5
    f = random_function(n, FunctionModel.PRODUCT, seed=9)
    w = weights(n)
    for k in range(n + 1):
        assert np.ptp(f.values[w == k]) <= 1e-12 * np.max(f.values)
    ratios = f.values[w == 1][0] / f.values[0]
    assert f.values[-1] == pytest.approx(f.values[0] * ratios ** n, rel=1e-12)


def test_log_uniform_is_positive_and_signed_has_negatives():
    positive = random_function(6, FunctionModel.LOG_UNIFORM, seed=2)
    signed = random_function(6, FunctionModel.SIGNED, seed=2)
    assert np.all(positive.values > 0.0)
    assert not signed.nonnegative


def test_unknown_model():
    assert resolve_model("sparse") is FunctionModel.SPARSE
    with pytest.raises(UnknownModelError, match="known: log_uniform"):
        resolve_model("gaussian")
