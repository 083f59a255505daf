#!/usr/bin/env python3.12
"""
parameters

Named parameter arrays with their gradient and Adam companions.

Author: transit-control maintainers

Date: 17.10.2026
"""

from typing import Iterator

import numpy as np

from transit_control_app.src.errors import ShapeError
from transit_control_app.src.neural.tensor import Tensor
from transit_control_app.src.types import FloatArray


class ParameterSet:
    """Named float64 arrays for one network (actor, critic, target critic or meta-learner).

    `version` increases on every write so forward caches can detect that
    the parameters they were built from have changed.
    """

    def __init__(self, name: str) -> None:
        self.name = name
        self.values: dict[str, FloatArray] = {}
        self.grads: dict[str, FloatArray] = {}
        self.m: dict[str, FloatArray] = {}
        self.v: dict[str, FloatArray] = {}
        self.step = 0
        self.version = 0

    def __contains__(self, key: str) -> bool:
        return key in self.values

    def __getitem__(self, key: str) -> FloatArray:
        return self.values[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def names(self) -> list[str]:
        return list(self.values)

    @property
    def shapes(self) -> dict[str, tuple[int, ...]]:
        return {k: tuple(v.shape) for k, v in self.values.items()}

    @property
    def size(self) -> int:
        return sum(v.size for v in self.values.values())

    def add(self, key: str, value: FloatArray) -> None:
        array = np.array(value, dtype=np.float64)
        self.values[key] = array
        self.grads[key] = np.zeros_like(array)
        self.m[key] = np.zeros_like(array)
        self.v[key] = np.zeros_like(array)
        self.version += 1

    def set(self, key: str, value: FloatArray) -> None:
        if key not in self.values:
            raise KeyError(f"{self.name} has no parameter '{key}'")
        array = np.asarray(value, dtype=np.float64)
        if array.shape != self.values[key].shape:
            raise ShapeError(f"{self.name}.{key}: expected {self.values[key].shape}, got {array.shape}")
        self.values[key] = array.copy()
        self.version += 1

    def set_grads(self, grads: dict[str, FloatArray]) -> None:
        for key, g in grads.items():
            if g.shape != self.values[key].shape:
                raise ShapeError(f"{self.name}.{key}: gradient {g.shape} does not match {self.values[key].shape}")
            self.grads[key] = np.asarray(g, dtype=np.float64)

    def zero_grad(self) -> None:
        for key in self.grads:
            self.grads[key] = np.zeros_like(self.values[key])

    def tensors(self) -> dict[str, Tensor]:
        """Fresh differentiable leaves over the current values."""
        return {k: Tensor(v, requires_grad=True, name=f"{self.name}.{k}") for k, v in self.values.items()}

    def constants(self) -> dict[str, Tensor]:
        return {k: Tensor(v, name=f"{self.name}.{k}") for k, v in self.values.items()}

    def flat(self) -> FloatArray:
        if not self.values:
            return np.zeros(0)
        return np.concatenate([v.ravel() for v in self.values.values()])

    def assign_flat(self, vector: FloatArray) -> None:
        if vector.size != self.size:
            raise ShapeError(f"{self.name}: flat vector has {vector.size} entries, expected {self.size}")
        offset = 0
        for key, value in self.values.items():
            self.values[key] = np.asarray(vector[offset:offset + value.size], dtype=np.float64).reshape(value.shape)
            offset += value.size
        self.version += 1

    def copy(self, name: str | None = None) -> "ParameterSet":
        clone = ParameterSet(name or self.name)
        for key, value in self.values.items():
            clone.add(key, value)
        return clone

    def all_finite(self) -> bool:
        return all(np.all(np.isfinite(v)) for v in self.values.values())
