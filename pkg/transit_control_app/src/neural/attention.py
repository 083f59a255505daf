#!/usr/bin/env python3.12
"""
attention

Single-layer attention that summarizes an event graph from the ego's view.

The ego node provides the query, event nodes provide keys and values.
Graphs without events fall back to a learned null context.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.errors import ShapeError
from transit_control_app.src.neural.parameters import ParameterSet
from transit_control_app.src.neural.tensor import Tensor, as_tensor, softmax
from transit_control_app.src.types import FloatArray


@dataclass(frozen=True)
class AttentionSpec:
    ego_dim: int
    event_dim: int
    dim: int = config.attention_dim
    prefix: str = "attn"

    def key(self, name: str) -> str:
        return f"{self.prefix}.{name}"


def init_attention(params: ParameterSet, spec: AttentionSpec, rng: np.random.Generator) -> ParameterSet:
    def glorot(fan_in: int, fan_out: int) -> FloatArray:
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        return rng.uniform(-limit, limit, size=(fan_in, fan_out))

    params.add(spec.key("query"), glorot(spec.ego_dim, spec.dim))
    params.add(spec.key("key"), glorot(spec.event_dim, spec.dim))
    params.add(spec.key("value"), glorot(spec.event_dim, spec.dim))
    params.add(spec.key("out.w"), glorot(spec.dim, spec.dim))
    params.add(spec.key("out.b"), np.zeros(spec.dim))
    params.add(spec.key("null"), rng.normal(0.0, 0.1, size=spec.dim))
    return params


def pad_events(events: Sequence[FloatArray], event_dim: int) -> tuple[FloatArray, FloatArray]:
    """Stack ragged (n_i, event_dim) node arrays into (B, E, event_dim) plus a (B, E) mask."""
    width = max([len(e) for e in events] + [1])
    padded = np.zeros((len(events), width, event_dim))
    mask = np.zeros((len(events), width))
    for i, nodes in enumerate(events):
        if len(nodes):
            padded[i, :len(nodes)] = nodes
            mask[i, :len(nodes)] = 1.0
    return padded, mask


def attention_aggregate(params: dict[str, Tensor], spec: AttentionSpec, ego: Tensor | FloatArray,
                        events: Tensor | FloatArray, mask: FloatArray) -> tuple[Tensor, FloatArray]:
    """Context vectors (B, dim) and attention weights (B, E) for a padded batch of graphs."""
    ego, events = as_tensor(ego), as_tensor(events)
    if ego.ndim != 2 or events.ndim != 3 or events.shape[:2] != mask.shape or ego.shape[0] != mask.shape[0]:
        raise ShapeError(f"Attention got ego {ego.shape}, events {events.shape}, mask {mask.shape}")

    batch = ego.shape[0]
    query = (ego @ params[spec.key("query")]).reshape(batch, 1, spec.dim)
    keys = events @ params[spec.key("key")]
    values = events @ params[spec.key("value")]

    scores = (query @ keys.swapaxes(-1, -2)) * (1.0 / np.sqrt(spec.dim))
    weights = softmax(scores, axis=-1, mask=mask[:, None, :])
    pooled = (weights @ values).reshape(batch, spec.dim)

    has_events = (mask.sum(axis=1, keepdims=True) > 0).astype(np.float64)
    context = pooled * has_events + params[spec.key("null")] * (1.0 - has_events)
    out = context @ params[spec.key("out.w")] + params[spec.key("out.b")]
    return out, weights.data.reshape(batch, -1)
