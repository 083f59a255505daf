#!/usr/bin/env python3.12
"""
network

Dense feed-forward networks over a ParameterSet.

`mlp` is the functional form used inside larger graphs; `mlp_forward` and
`mlp_backward` expose a cache-based interface for standalone use.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass

import numpy as np

from transit_control_app.src.errors import ConfigError, ShapeError, StaleCacheError
from transit_control_app.src.neural.parameters import ParameterSet
from transit_control_app.src.neural.tensor import ACTIVATIONS, Tensor, grad
from transit_control_app.src.types import FloatArray

INITIALIZERS = ("he", "xavier", "zeros")


@dataclass(frozen=True)
class NetworkSpec:
    widths: tuple[int, ...]
    activations: tuple[str, ...]
    init: str = "he"
    prefix: str = "layer"

    def __post_init__(self) -> None:
        errors = []
        if len(self.widths) < 2 or any(w < 1 for w in self.widths):
            errors.append(f"Network widths {self.widths} need an input, an output and positive sizes")
        if len(self.activations) != len(self.widths) - 1:
            errors.append(f"Network needs {len(self.widths) - 1} activations, got {len(self.activations)}")
        unknown = [a for a in self.activations if a not in ACTIVATIONS]
        if unknown:
            errors.append(f"Unknown activations {unknown}, use one of: {', '.join(ACTIVATIONS)}")
        if self.init not in INITIALIZERS:
            errors.append(f"Unknown initializer '{self.init}', use one of: {', '.join(INITIALIZERS)}")
        if errors:
            raise ConfigError(errors)

    @property
    def n_layers(self) -> int:
        return len(self.widths) - 1

    @property
    def input_dim(self) -> int:
        return self.widths[0]

    @property
    def output_dim(self) -> int:
        return self.widths[-1]

    def weight(self, layer: int) -> str:
        return f"{self.prefix}{layer}.w"

    def bias(self, layer: int) -> str:
        return f"{self.prefix}{layer}.b"


def init_mlp(params: ParameterSet, spec: NetworkSpec, rng: np.random.Generator) -> ParameterSet:
    """Add the weights and biases of `spec` to `params`."""
    for layer, (fan_in, fan_out) in enumerate(zip(spec.widths, spec.widths[1:])):
        if spec.init == "he":
            weight = rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_in, fan_out))
        elif spec.init == "xavier":
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            weight = rng.uniform(-limit, limit, size=(fan_in, fan_out))
        else:
            weight = np.zeros((fan_in, fan_out))
        params.add(spec.weight(layer), weight)
        params.add(spec.bias(layer), np.zeros(fan_out))
    return params


def linear(x: Tensor, weight: Tensor, bias: Tensor) -> Tensor:
    return x @ weight + bias


def mlp(params: dict[str, Tensor], spec: NetworkSpec, x: Tensor) -> Tensor:
    if x.shape[-1] != spec.input_dim:
        raise ShapeError(f"Network expects {spec.input_dim} input features, got {x.shape[-1]}")
    h = x
    for layer, activation in enumerate(spec.activations):
        h = ACTIVATIONS[activation](linear(h, params[spec.weight(layer)], params[spec.bias(layer)]))
    return h


@dataclass
class ForwardCache:
    params: ParameterSet
    version: int
    inputs: Tensor
    leaves: dict[str, Tensor]
    output: Tensor


def mlp_forward(params: ParameterSet, spec: NetworkSpec, x: FloatArray) -> tuple[FloatArray, ForwardCache]:
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    inputs = Tensor(x, requires_grad=True)
    leaves = params.tensors()
    output = mlp(leaves, spec, inputs)
    return output.data, ForwardCache(params, params.version, inputs, leaves, output)


def mlp_backward(cache: ForwardCache, dy: FloatArray) -> tuple[dict[str, FloatArray], FloatArray]:
    """Parameter gradients and input gradient of sum(y * dy)."""
    if cache.params.version != cache.version:
        raise StaleCacheError(f"{cache.params.name} changed since the forward pass")
    dy = np.asarray(dy, dtype=np.float64).reshape(cache.output.shape)

    names = list(cache.leaves)
    grads = grad(cache.output, [cache.leaves[n] for n in names] + [cache.inputs], grad_output=Tensor(dy))
    return {n: g.data for n, g in zip(names, grads)}, grads[-1].data
