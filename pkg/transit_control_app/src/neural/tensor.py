#!/usr/bin/env python3.12
"""
tensor

Reverse-mode automatic differentiation over numpy arrays.

Every backward rule is written with Tensor operations, so gradients can be
differentiated again when `grad(..., create_graph=True)` is used. This is
what the meta-learner relies on to differentiate through an actor step.

Author: transit-control maintainers

Date: 17.10.2026
"""

import threading
from contextlib import contextmanager
from typing import Any, Callable, Iterator, Sequence

import numpy as np

from transit_control_app.src.errors import ShapeError
from transit_control_app.src.types import FloatArray

# graph recording flag, one per thread
_state = threading.local()

BackwardFn = Callable[["Tensor"], Sequence["Tensor | None"]]


@contextmanager
def no_grad() -> Iterator[None]:
    """Operations inside the block record no graph."""
    previous = is_grad_enabled()
    _state.enabled = False
    try:
        yield
    finally:
        _state.enabled = previous


def is_grad_enabled() -> bool:
    return getattr(_state, "enabled", True)


class Tensor:
    __array_priority__ = 100

    def __init__(self, data: Any, requires_grad: bool = False, name: str = "") -> None:
        self.data: FloatArray = np.asarray(data, dtype=np.float64)
        self.requires_grad = requires_grad
        self.name = name
        self._parents: tuple[Tensor, ...] = ()
        self._backward: BackwardFn | None = None

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.data.shape)

    @property
    def ndim(self) -> int:
        return int(self.data.ndim)

    @property
    def T(self) -> "Tensor":
        return self.swapaxes(-1, -2)

    def numpy(self) -> FloatArray:
        return self.data

    def item(self) -> float:
        return float(self.data)

    def detach(self) -> "Tensor":
        return Tensor(self.data)

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, requires_grad={self.requires_grad})"

    # arithmetic

    def __add__(self, other: Any) -> "Tensor":
        return add(self, as_tensor(other))

    def __radd__(self, other: Any) -> "Tensor":
        return add(as_tensor(other), self)

    def __sub__(self, other: Any) -> "Tensor":
        return add(self, neg(as_tensor(other)))

    def __rsub__(self, other: Any) -> "Tensor":
        return add(as_tensor(other), neg(self))

    def __mul__(self, other: Any) -> "Tensor":
        return mul(self, as_tensor(other))

    def __rmul__(self, other: Any) -> "Tensor":
        return mul(as_tensor(other), self)

    def __truediv__(self, other: Any) -> "Tensor":
        return mul(self, power(as_tensor(other), -1.0))

    def __rtruediv__(self, other: Any) -> "Tensor":
        return mul(as_tensor(other), power(self, -1.0))

    def __neg__(self) -> "Tensor":
        return neg(self)

    def __pow__(self, exponent: float) -> "Tensor":
        return power(self, exponent)

    def __matmul__(self, other: Any) -> "Tensor":
        return matmul(self, as_tensor(other))

    def __rmatmul__(self, other: Any) -> "Tensor":
        return matmul(as_tensor(other), self)

    def __getitem__(self, index: Any) -> "Tensor":
        return getitem(self, index)

    # shape and reductions

    def sum(self, axis: int | tuple[int, ...] | None = None, keepdims: bool = False) -> "Tensor":
        return reduce_sum(self, axis, keepdims)

    def mean(self, axis: int | tuple[int, ...] | None = None, keepdims: bool = False) -> "Tensor":
        count = self.data.size if axis is None else int(np.prod([self.shape[a] for a in np.atleast_1d(axis)]))
        return reduce_sum(self, axis, keepdims) * (1.0 / count)

    def reshape(self, *shape: int) -> "Tensor":
        return reshape(self, shape[0] if len(shape) == 1 and isinstance(shape[0], tuple) else shape)

    def swapaxes(self, axis1: int, axis2: int) -> "Tensor":
        return swapaxes(self, axis1, axis2)

    def broadcast_to(self, shape: tuple[int, ...]) -> "Tensor":
        return broadcast_to(self, shape)

    # elementwise

    def exp(self) -> "Tensor":
        return exp(self)

    def log(self) -> "Tensor":
        return log(self)

    def tanh(self) -> "Tensor":
        return tanh(self)

    def sigmoid(self) -> "Tensor":
        return sigmoid(self)

    def relu(self) -> "Tensor":
        return relu(self)


def as_tensor(value: Any) -> Tensor:
    return value if isinstance(value, Tensor) else Tensor(value)


def _node(data: FloatArray, parents: tuple[Tensor, ...], backward: BackwardFn) -> Tensor:
    out = Tensor(data)
    if is_grad_enabled() and any(p.requires_grad for p in parents):
        out.requires_grad = True
        out._parents = parents
        out._backward = backward
    return out


def unbroadcast(g: Tensor, shape: tuple[int, ...]) -> Tensor:
    """Sum `g` down to `shape` along the axes numpy broadcasting expanded."""
    if g.shape == shape:
        return g
    extra = g.ndim - len(shape)
    if extra > 0:
        g = g.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, n in enumerate(shape) if n == 1 and g.shape[i] != 1)
    if axes:
        g = g.sum(axis=axes, keepdims=True)
    return g


def add(a: Tensor, b: Tensor) -> Tensor:
    return _node(a.data + b.data, (a, b), lambda g: (unbroadcast(g, a.shape), unbroadcast(g, b.shape)))


def neg(a: Tensor) -> Tensor:
    return _node(-a.data, (a,), lambda g: (neg(g),))


def mul(a: Tensor, b: Tensor) -> Tensor:
    return _node(a.data * b.data, (a, b), lambda g: (unbroadcast(g * b, a.shape), unbroadcast(g * a, b.shape)))


def power(a: Tensor, exponent: float) -> Tensor:
    return _node(a.data ** exponent, (a,), lambda g: (g * (power(a, exponent - 1.0) * exponent),))


def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.ndim < 2 or b.ndim < 2:
        raise ShapeError(f"matmul needs at least 2-D operands, got {a.shape} and {b.shape}")
    if a.shape[-1] != b.shape[-2]:
        raise ShapeError(f"matmul shapes {a.shape} and {b.shape} are incompatible")

    def backward(g: Tensor) -> tuple[Tensor, Tensor]:
        return unbroadcast(g @ b.swapaxes(-1, -2), a.shape), unbroadcast(a.swapaxes(-1, -2) @ g, b.shape)

    return _node(a.data @ b.data, (a, b), backward)


def reduce_sum(a: Tensor, axis: int | tuple[int, ...] | None = None, keepdims: bool = False) -> Tensor:
    def backward(g: Tensor) -> tuple[Tensor]:
        if axis is not None and not keepdims:
            axes = tuple(ax % a.ndim for ax in np.atleast_1d(axis))
            kept = tuple(1 if i in axes else n for i, n in enumerate(a.shape))
            g = g.reshape(kept)
        elif axis is None:
            g = g.reshape((1,) * a.ndim)
        return (g.broadcast_to(a.shape),)

    return _node(np.sum(a.data, axis=axis, keepdims=keepdims), (a,), backward)


def reshape(a: Tensor, shape: tuple[int, ...]) -> Tensor:
    return _node(a.data.reshape(shape), (a,), lambda g: (g.reshape(a.shape),))


def swapaxes(a: Tensor, axis1: int, axis2: int) -> Tensor:
    return _node(np.swapaxes(a.data, axis1, axis2), (a,), lambda g: (g.swapaxes(axis1, axis2),))


def broadcast_to(a: Tensor, shape: tuple[int, ...]) -> Tensor:
    return _node(np.broadcast_to(a.data, shape).copy(), (a,), lambda g: (unbroadcast(g, a.shape),))


def exp(a: Tensor) -> Tensor:
    out = _node(np.exp(a.data), (a,), lambda g: (g * out,))
    return out


def log(a: Tensor) -> Tensor:
    return _node(np.log(a.data), (a,), lambda g: (g / a,))


def tanh(a: Tensor) -> Tensor:
    out = _node(np.tanh(a.data), (a,), lambda g: (g * (1.0 - out * out),))
    return out


def sigmoid(a: Tensor) -> Tensor:
    out = _node(1.0 / (1.0 + np.exp(-a.data)), (a,), lambda g: (g * out * (1.0 - out),))
    return out


def relu(a: Tensor) -> Tensor:
    mask = (a.data > 0).astype(np.float64)
    return _node(a.data * mask, (a,), lambda g: (g * mask,))


def identity(a: Tensor) -> Tensor:
    return a


def getitem(a: Tensor, index: Any) -> Tensor:
    return _node(a.data[index], (a,), lambda g: (scatter(g, index, a.shape),))


def scatter(g: Tensor, index: Any, shape: tuple[int, ...]) -> Tensor:
    """Adjoint of `getitem`: add `g` into a zero array of `shape` at `index`."""
    data = np.zeros(shape)
    np.add.at(data, index, g.data)
    return _node(data, (g,), lambda gg: (getitem(gg, index),))


def concat(tensors: Sequence[Tensor], axis: int = -1) -> Tensor:
    data = np.concatenate([t.data for t in tensors], axis=axis)
    axis = axis % data.ndim
    bounds = np.cumsum([0] + [t.shape[axis] for t in tensors])

    def backward(g: Tensor) -> list[Tensor]:
        slices = []
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            index = tuple(slice(None) if i != axis else slice(int(lo), int(hi)) for i in range(data.ndim))
            slices.append(g[index])
        return slices

    return _node(data, tuple(tensors), backward)


def softmax(a: Tensor, axis: int = -1, mask: FloatArray | None = None) -> Tensor:
    """Softmax along `axis`; entries where `mask` is 0 get probability 0."""
    shifted = a.data if mask is None else np.where(mask > 0, a.data, -np.inf)
    peak = np.max(shifted, axis=axis, keepdims=True)
    peak = np.where(np.isfinite(peak), peak, 0.0)
    e = (a - peak).exp()
    if mask is not None:
        e = e * mask
    total = e.sum(axis=axis, keepdims=True)
    if mask is not None:
        total = total + (np.sum(mask, axis=axis, keepdims=True) == 0).astype(np.float64)
    return e / total


def gather_sorted(a: Tensor, axis: int = -1) -> Tensor:
    """`a` sorted ascending along the last axis, differentiable through the permutation."""
    if axis not in (-1, a.ndim - 1):
        raise ShapeError("gather_sorted only sorts along the last axis")
    order = np.argsort(a.data, axis=-1, kind="stable")
    lead = np.indices(order.shape)[:-1]
    return a[(*lead, order)]


def _topological(root: Tensor) -> list[Tensor]:
    order: list[Tensor] = []
    seen: set[int] = set()
    stack: list[tuple[Tensor, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for parent in node._parents:
            if parent.requires_grad and id(parent) not in seen:
                stack.append((parent, False))
    return order


def grad(output: Tensor, inputs: Sequence[Tensor], create_graph: bool = False,
         grad_output: Tensor | None = None) -> list[Tensor]:
    """Gradients of `output` with respect to `inputs`.

    Unused inputs get zero gradients. With `create_graph` the returned
    tensors are themselves differentiable.
    """
    if grad_output is None:
        if output.data.size != 1:
            raise ShapeError(f"grad of a non-scalar output {output.shape} needs grad_output")
        grad_output = Tensor(np.ones_like(output.data))

    grads: dict[int, Tensor] = {}
    if output.requires_grad:
        grads[id(output)] = grad_output

    def run() -> None:
        for node in reversed(_topological(output)):
            g = grads.get(id(node))
            if g is None or node._backward is None:
                continue
            for parent, pg in zip(node._parents, node._backward(g)):
                if pg is None or not parent.requires_grad:
                    continue
                key = id(parent)
                grads[key] = grads[key] + pg if key in grads else pg

    if create_graph:
        run()
    else:
        with no_grad():
            run()

    result = []
    for tensor in inputs:
        g = grads.get(id(tensor))
        result.append(g if g is not None else Tensor(np.zeros_like(tensor.data)))
    return result


ACTIVATIONS: dict[str, Callable[[Tensor], Tensor]] = {
    "relu": relu,
    "tanh": tanh,
    "sigmoid": sigmoid,
    "linear": identity,
}
