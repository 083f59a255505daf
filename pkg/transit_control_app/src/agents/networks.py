#!/usr/bin/env python3.12
"""
networks

Actor, critics and the meta-weight network used by the learned policies.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass

import numpy as np

from transit_control_app.src.agents.spec import AgentSpec
from transit_control_app.src.env.events import EGO_DIM, EVENT_DIM
from transit_control_app.src.env.observation import N_FEATURES
from transit_control_app.src.neural.attention import AttentionSpec, attention_aggregate, init_attention
from transit_control_app.src.neural.embedding import QuantileEmbedding, init_embedding, quantile_embed
from transit_control_app.src.neural.network import NetworkSpec, init_mlp, mlp
from transit_control_app.src.neural.parameters import ParameterSet
from transit_control_app.src.neural.tensor import Tensor, concat, softmax
from transit_control_app.src.types import FloatArray


@dataclass(frozen=True)
class Architecture:
    actor: NetworkSpec
    trunk: NetworkSpec
    embedding: QuantileEmbedding
    head: NetworkSpec
    scalar: NetworkSpec
    attention: AttentionSpec
    meta_head: NetworkSpec

    @property
    def n_quantiles(self) -> int:
        return self.meta_head.output_dim


def build_architecture(spec: AgentSpec) -> Architecture:
    hidden = tuple(spec.hidden)
    act = (spec.activation,) * len(hidden)
    width = hidden[-1]
    return Architecture(
        actor=NetworkSpec((N_FEATURES, *hidden, 1), (*act, "sigmoid"), prefix="actor"),
        trunk=NetworkSpec((N_FEATURES + 1, *hidden), act, prefix="trunk"),
        embedding=QuantileEmbedding(n_cos=spec.n_cos, dim=width),
        head=NetworkSpec((width, width, 1), (spec.activation, "linear"), prefix="head"),
        scalar=NetworkSpec((N_FEATURES + 1, *hidden, 1), (*act, "linear"), prefix="q"),
        attention=AttentionSpec(ego_dim=EGO_DIM, event_dim=EVENT_DIM, dim=spec.attention_dim),
        meta_head=NetworkSpec((EGO_DIM + spec.attention_dim, width, spec.n_quantiles),
                              (spec.activation, "linear"), prefix="meta"),
    )


def init_actor(arch: Architecture, rng: np.random.Generator, name: str = "actor") -> ParameterSet:
    return init_mlp(ParameterSet(name), arch.actor, rng)


def init_quantile_critic(arch: Architecture, rng: np.random.Generator, name: str = "critic") -> ParameterSet:
    params = init_mlp(ParameterSet(name), arch.trunk, rng)
    init_embedding(params, arch.embedding, rng)
    return init_mlp(params, arch.head, rng)


def init_scalar_critic(arch: Architecture, rng: np.random.Generator, name: str = "critic") -> ParameterSet:
    return init_mlp(ParameterSet(name), arch.scalar, rng)


def init_meta(arch: Architecture, rng: np.random.Generator, name: str = "meta") -> ParameterSet:
    params = init_attention(ParameterSet(name), arch.attention, rng)
    return init_mlp(params, arch.meta_head, rng)


def actor_forward(params: dict[str, Tensor], arch: Architecture, states: Tensor | FloatArray) -> Tensor:
    """Normalized holding action in [0, 1], shape (B, 1)."""
    return mlp(params, arch.actor, states if isinstance(states, Tensor) else Tensor(states))


def critic_quantiles(params: dict[str, Tensor], arch: Architecture, states: Tensor | FloatArray,
                     actions: Tensor | FloatArray, taus: FloatArray) -> Tensor:
    """Z_tau(s, a) for (B, K) or (K,) fractions, shape (B, K)."""
    s = states if isinstance(states, Tensor) else Tensor(states)
    a = actions if isinstance(actions, Tensor) else Tensor(actions)
    batch = s.shape[0]
    taus = np.broadcast_to(np.asarray(taus, dtype=np.float64), (batch, np.shape(taus)[-1]))

    psi = mlp(params, arch.trunk, concat([s, a], axis=-1)).reshape(batch, 1, arch.trunk.output_dim)
    phi = quantile_embed(taus, params, arch.embedding)
    z = mlp(params, arch.head, psi * phi)
    return z.reshape(batch, taus.shape[-1])


def scalar_q(params: dict[str, Tensor], arch: Architecture, states: Tensor | FloatArray,
             actions: Tensor | FloatArray) -> Tensor:
    s = states if isinstance(states, Tensor) else Tensor(states)
    a = actions if isinstance(actions, Tensor) else Tensor(actions)
    return mlp(params, arch.scalar, concat([s, a], axis=-1)).reshape(s.shape[0])


def meta_weights(params: dict[str, Tensor], arch: Architecture, ego: FloatArray, events: FloatArray,
                 mask: FloatArray) -> tuple[Tensor, FloatArray]:
    """W(G; eta): (B, K) non-negative weights with mean 1 per row, plus attention weights."""
    context, attention = attention_aggregate(params, arch.attention, ego, events, mask)
    logits = mlp(params, arch.meta_head, concat([Tensor(ego), context], axis=-1))
    return softmax(logits, axis=-1) * float(arch.n_quantiles), attention
