#!/usr/bin/env python3.12
"""
learner

Losses and update steps shared by the learned policies.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from transit_control_app.src.agents.distortion import distorted_value
from transit_control_app.src.agents.networks import (
    Architecture,
    actor_forward,
    critic_quantiles,
    meta_weights,
    scalar_q,
)
from transit_control_app.src.agents.quantile import huber, midpoints, quantile_regression_loss
from transit_control_app.src.env.events import EVENT_DIM
from transit_control_app.src.env.replay import Experience
from transit_control_app.src.errors import NonFiniteGradientError, ShapeError
from transit_control_app.src.neural.attention import pad_events
from transit_control_app.src.neural.parameters import ParameterSet
from transit_control_app.src.neural.tensor import Tensor, gather_sorted, grad
from transit_control_app.src.types import FloatArray

CriticFn = Callable[[Tensor, Tensor], Tensor]


@dataclass(frozen=True)
class Batch:
    states: FloatArray
    actions: FloatArray
    rewards: FloatArray
    next_states: FloatArray
    ego: FloatArray
    events: FloatArray
    mask: FloatArray

    def __len__(self) -> int:
        return int(self.states.shape[0])

    @classmethod
    def from_experiences(cls, experiences: Sequence[Experience]) -> "Batch":
        if not experiences:
            raise ValueError("Cannot build a minibatch from no experiences")
        events, mask = pad_events([e.g.event_features() for e in experiences], EVENT_DIM)
        return cls(
            states=np.stack([e.s.normalized for e in experiences]),
            actions=np.array([[e.a] for e in experiences]),
            rewards=np.array([e.r for e in experiences]),
            next_states=np.stack([e.s_next.normalized for e in experiences]),
            ego=np.stack([e.g.ego_features() for e in experiences]),
            events=events,
            mask=mask,
        )


def _check_finite(name: str, grads: Sequence[Tensor]) -> None:
    for g in grads:
        if not np.all(np.isfinite(g.data)):
            raise NonFiniteGradientError(f"Non-finite gradient while computing {name}")


def gradients(value: Tensor, leaves: dict[str, Tensor], what: str, ascend: bool = False) -> dict[str, FloatArray]:
    """Gradients of `value` for every leaf; negated when ascending so Adam can minimize."""
    names = list(leaves)
    grads = grad(value, [leaves[n] for n in names])
    _check_finite(what, grads)
    sign = -1.0 if ascend else 1.0
    return {n: sign * g.data for n, g in zip(names, grads)}


def quantile_critic_loss(critic: dict[str, Tensor], target: dict[str, Tensor], next_actions: FloatArray,
                         arch: Architecture, batch: Batch, fractions: FloatArray, target_fractions: FloatArray,
                         kappa: float, gamma: float, printed: bool = False) -> Tensor:
    """Quantile Huber TD loss; online and target quantiles are sorted ascending first."""
    if len(batch) == 0:
        raise ValueError("Critic loss needs a non-empty batch")
    taus = midpoints(fractions)
    target_taus = midpoints(target_fractions)

    next_z = critic_quantiles(target, arch, batch.next_states, next_actions, target_taus)
    y = batch.rewards[:, None] + gamma * np.sort(next_z.data, axis=-1)

    z = gather_sorted(critic_quantiles(critic, arch, batch.states, batch.actions, taus))
    return quantile_regression_loss(z, y, taus, kappa, target_taus=target_taus, printed=printed)


def scalar_critic_loss(critic: dict[str, Tensor], target: dict[str, Tensor], next_actions: FloatArray,
                       arch: Architecture, batch: Batch, kappa: float, gamma: float) -> Tensor:
    """Huber TD loss of a scalar Q critic."""
    y = batch.rewards + gamma * scalar_q(target, arch, batch.next_states, next_actions).data
    delta = Tensor(y) - scalar_q(critic, arch, batch.states, batch.actions)
    return huber(delta, kappa).mean()


def quantile_critic_fn(critic: dict[str, Tensor], arch: Architecture, taus: FloatArray) -> CriticFn:
    def fn(states: Tensor, actions: Tensor) -> Tensor:
        return gather_sorted(critic_quantiles(critic, arch, states, actions, taus))
    return fn


def scalar_critic_fn(critic: dict[str, Tensor], arch: Architecture) -> CriticFn:
    def fn(states: Tensor, actions: Tensor) -> Tensor:
        return scalar_q(critic, arch, states, actions).reshape(states.shape[0], 1)
    return fn


def actor_objective(actor: dict[str, Tensor], arch: Architecture, states: FloatArray, critic_fn: CriticFn,
                    weights: Tensor | FloatArray, fractions: FloatArray) -> Tensor:
    """Batch mean of the distorted value of the actor's own action."""
    s = Tensor(states)
    values = critic_fn(s, actor_forward(actor, arch, s))
    if values.shape[-1] != len(fractions) - 1:
        raise ShapeError(f"Critic returned {values.shape[-1]} values for {len(fractions) - 1} fraction intervals")
    return distorted_value(values, weights, fractions).mean()


def batch_meta_weights(meta: dict[str, Tensor], arch: Architecture, batch: Batch) -> Tensor:
    weights, _ = meta_weights(meta, arch, batch.ego, batch.events, batch.mask)
    return weights


def lookahead_objective(actor: ParameterSet, meta: ParameterSet, arch: Architecture, batch: Batch,
                        batch_prime: Batch, critic_fn: CriticFn, fractions: FloatArray, lr_actor: float,
                        create_graph: bool = False) -> tuple[Tensor, dict[str, Tensor]]:
    """J'(theta') with theta' = theta + lr * dJ(theta, eta)/dtheta and all-ones weights in J'."""
    theta = actor.tensors()
    eta = meta.tensors()

    inner = actor_objective(theta, arch, batch.states, critic_fn, batch_meta_weights(eta, arch, batch), fractions)
    names = list(theta)
    inner_grads = grad(inner, [theta[n] for n in names], create_graph=create_graph)
    _check_finite("the inner actor step", inner_grads)

    stepped = {n: theta[n] + inner_grads[i] * lr_actor for i, n in enumerate(names)}
    ones = np.ones(len(fractions) - 1)
    outer = actor_objective(stepped, arch, batch_prime.states, critic_fn, ones, fractions)
    return outer, eta


def meta_gradient(actor: ParameterSet, meta: ParameterSet, arch: Architecture, batch: Batch, batch_prime: Batch,
                  critic_fn: CriticFn, fractions: FloatArray, lr_actor: float) -> tuple[dict[str, FloatArray], float]:
    """dJ'/deta through one actor step, and the value of J'."""
    outer, eta = lookahead_objective(actor, meta, arch, batch, batch_prime, critic_fn, fractions, lr_actor,
                                     create_graph=True)
    names = list(eta)
    grads = grad(outer, [eta[n] for n in names])
    _check_finite("the meta gradient", grads)
    return {n: g.data for n, g in zip(names, grads)}, outer.item()
