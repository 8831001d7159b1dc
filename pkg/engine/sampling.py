from __future__ import annotations

import math
from typing import List

import numpy as np

from core.cube import CubeFunction, make_function, sphere_mixture, weights
from core.enums import FunctionModel
from core.errors import UnknownModelError

MODEL_ORDER: List[FunctionModel] = list(FunctionModel)


def resolve_model(model: FunctionModel | str) -> FunctionModel:
    try:
        return FunctionModel(model)
    except ValueError as exc:
        known = ", ".join(item.value for item in FunctionModel)
        raise UnknownModelError(f"unknown function model '{model}' (known: {known})", {"model": str(model)}) from exc


def model_generator(seed: int, n: int, model: FunctionModel, sample: int = 0) -> np.random.Generator:
    """Counter-based stream keyed by (seed, n, model, sample); independent of evaluation order."""
    key = [int(seed), int(n), MODEL_ORDER.index(model), int(sample)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(key)))


def _log_uniform(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    return np.exp2(rng.uniform(-n, n, size=count))


def random_function(n: int, model: FunctionModel | str, seed: int, sample: int = 0) -> CubeFunction:
    model = resolve_model(model)
    n = int(n)
    rng = model_generator(seed, n, model, sample)
    size = 1 << n

    if model == FunctionModel.LOG_UNIFORM:
        return make_function(n, _log_uniform(rng, n, size))

    if model == FunctionModel.SPARSE:
        support = 1 << ((n + 1) // 2)
        values = np.zeros(size)
        chosen = rng.choice(size, size=support, replace=False)
        values[chosen] = _log_uniform(rng, n, support)
        return make_function(n, values)

    if model == FunctionModel.SPHERE_MIXTURE:
        r = int(rng.integers(0, n + 1))
        sphere_size = math.comb(n, r)
        if sphere_size == size:
            return sphere_mixture(n, r, 1.0)
        v = float(rng.uniform(0.0, size / sphere_size))
        return sphere_mixture(n, r, v)

    if model == FunctionModel.PRODUCT:
        # the same marginal g on every coordinate: f(x) = g(0)^(n-|x|) g(1)^|x|
        g0, g1 = _log_uniform(rng, 2, 2)
        ones = weights(n).astype(np.float64)
        return make_function(n, np.power(g0, n - ones) * np.power(g1, ones))

    return make_function(n, rng.normal(size=size))
