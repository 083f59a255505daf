#!/usr/bin/env python3.12
"""
actor_critic

Learned holding policies: the scalar actor-critic and the quantile
actor-critic family with uniform, Wang-distorted or meta-learned weights.

Author: transit-control maintainers

Date: 17.10.2026
"""

import logging
from abc import abstractmethod
from dataclasses import dataclass
from typing import Sequence

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.base import Agent, UpdateStats
from transit_control_app.src.agents.distortion import wang_weights
from transit_control_app.src.agents.learner import (
    Batch,
    CriticFn,
    actor_objective,
    batch_meta_weights,
    gradients,
    meta_gradient,
    quantile_critic_fn,
    quantile_critic_loss,
    scalar_critic_fn,
    scalar_critic_loss,
)
from transit_control_app.src.agents.networks import (
    Architecture,
    actor_forward,
    build_architecture,
    critic_quantiles,
    init_actor,
    init_meta,
    init_quantile_critic,
    init_scalar_critic,
    meta_weights,
)
from transit_control_app.src.agents.quantile import QuantileSet, fraction_grid, midpoints, random_fractions
from transit_control_app.src.agents.registry import AgentRegistry
from transit_control_app.src.agents.spec import AgentSpec
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.env.events import EVENT_DIM, EventGraph
from transit_control_app.src.env.observation import Observation
from transit_control_app.src.env.replay import ReplayMemory
from transit_control_app.src.errors import CheckpointError
from transit_control_app.src.neural.attention import pad_events
from transit_control_app.src.neural.optim import adam_step, copy_to_target
from transit_control_app.src.neural.parameters import ParameterSet
from transit_control_app.src.neural.tensor import Tensor, no_grad
from transit_control_app.src.types import FloatArray, WeightsByEventCount

logger = logging.getLogger(__name__)


@dataclass
class ParameterGroup:
    """Parameters of one learner; shared by all buses unless the agent runs independent copies."""
    actor: ParameterSet
    critic: ParameterSet
    target: ParameterSet
    meta: ParameterSet | None = None
    target_actor: ParameterSet | None = None

    def sets(self) -> dict[str, ParameterSet]:
        named = {"actor": self.actor, "critic": self.critic, "target": self.target}
        if self.meta is not None:
            named["meta"] = self.meta
        if self.target_actor is not None:
            named["target_actor"] = self.target_actor
        return named


class LearnedAgent(Agent):
    def __init__(self, spec: AgentSpec, rng: np.random.Generator) -> None:
        super().__init__(spec)
        self.arch: Architecture = build_architecture(spec)
        n_groups = 1 if spec.shared_parameters else spec.n_agents
        self.groups = {key: self._init_group(rng) for key in range(n_groups)}

    def _init_group(self, rng: np.random.Generator) -> ParameterGroup:
        actor = init_actor(self.arch, rng)
        critic = self._init_critic(rng)
        group = ParameterGroup(actor=actor, critic=critic, target=critic.copy("target"))
        if self.spec.target_actor:
            group.target_actor = actor.copy("target_actor")
        return group

    @abstractmethod
    def _init_critic(self, rng: np.random.Generator) -> ParameterSet:
        pass

    @abstractmethod
    def _critic_loss(self, critic: dict[str, Tensor], group: ParameterGroup, batch: Batch,
                     next_actions: FloatArray, rng: np.random.Generator) -> Tensor:
        pass

    @abstractmethod
    def _critic_fn(self, group: ParameterGroup) -> tuple[CriticFn, FloatArray]:
        """Frozen critic as used by the actor step, and its fraction grid."""

    @abstractmethod
    def _actor_weights(self, group: ParameterGroup, batch: Batch) -> FloatArray:
        pass

    def group(self, bus_id: int) -> ParameterGroup:
        return self.groups[0] if self.spec.shared_parameters else self.groups[bus_id]

    @property
    def exploration_std(self) -> float:
        return self.spec.exploration_std * (1.0 - self.progress)

    def policy(self, states: FloatArray, bus_id: int = 0) -> FloatArray:
        with no_grad():
            return actor_forward(self.group(bus_id).actor.constants(), self.arch, states).data[:, 0]

    def act(self, obs: Observation, explore: bool = False, rng: np.random.Generator | None = None,
            bus_id: int = 0) -> float:
        a = float(self.policy(obs.normalized[None, :], bus_id)[0])
        if explore:
            if rng is None:
                raise ValueError("Exploration needs a random generator")
            a += float(rng.normal(0.0, self.exploration_std))
        return min(1.0, max(0.0, a))

    def update(self, memory: ReplayMemory, rng: np.random.Generator,
               batch_size: int = config.batch_size) -> UpdateStats | None:
        stats = None
        for key, group in self.groups.items():
            bus_id = None if self.spec.shared_parameters else key
            experiences = memory.sample(rng, batch_size, bus_id=bus_id)
            if not experiences:
                continue
            batch = Batch.from_experiences(experiences)
            stats = self._update_group(group, batch, memory, rng, batch_size, bus_id)
        return stats

    def _update_group(self, group: ParameterGroup, batch: Batch, memory: ReplayMemory, rng: np.random.Generator,
                      batch_size: int, bus_id: int | None) -> UpdateStats:
        spec = self.spec

        with no_grad():
            next_actor = group.target_actor or group.actor
            next_actions = actor_forward(next_actor.constants(), self.arch, batch.next_states).data

        critic = group.critic.tensors()
        loss = self._critic_loss(critic, group, batch, next_actions, rng)
        adam_step(group.critic, gradients(loss, critic, "the critic loss"), spec.lr_critic)

        critic_fn, fractions = self._critic_fn(group)
        meta_value = None
        meta_grads: dict[str, FloatArray] = {}
        if group.meta is not None:
            prime = memory.sample(rng, batch_size, bus_id=bus_id)
            batch_prime = Batch.from_experiences(prime) if prime else batch
            meta_grads, meta_value = meta_gradient(group.actor, group.meta, self.arch, batch, batch_prime,
                                                   critic_fn, fractions, spec.lr_actor)

        theta = group.actor.tensors()
        objective = actor_objective(theta, self.arch, batch.states, critic_fn,
                                    self._actor_weights(group, batch), fractions)
        adam_step(group.actor, gradients(objective, theta, "the actor objective", ascend=True),
                  spec.lr_actor)

        if group.meta is not None:
            adam_step(group.meta, {k: -g for k, g in meta_grads.items()}, spec.lr_meta)

        copy_to_target(group.critic, group.target, spec.target_mix)
        if group.target_actor is not None:
            copy_to_target(group.actor, group.target_actor, spec.target_mix)

        logger.debug("%s update: critic loss %.5f, actor objective %.5f", self.variant, loss.item(), objective.item())
        return UpdateStats(critic_loss=loss.item(), actor_objective=objective.item(), meta_objective=meta_value)

    def parameter_sets(self) -> dict[str, ParameterSet]:
        named: dict[str, ParameterSet] = {}
        for key, group in self.groups.items():
            suffix = "" if self.spec.shared_parameters else f".{key}"
            for name, params in group.sets().items():
                named[name + suffix] = params
        return named

    def load_parameter_sets(self, sets: dict[str, ParameterSet]) -> None:
        for name, params in self.parameter_sets().items():
            if name not in sets:
                raise CheckpointError(f"Checkpoint has no parameter set '{name}'")
            if sets[name].shapes != params.shapes:
                raise CheckpointError(f"Checkpoint parameter set '{name}' does not match the {self.variant} network")
            for key in params:
                params.set(key, sets[name][key])


@AgentRegistry.register(AgentVariant.IAC)
class ActorCriticAgent(LearnedAgent):
    """Deterministic actor with a scalar Q critic."""

    UNIT = np.array([0.0, 1.0])

    def _init_critic(self, rng: np.random.Generator) -> ParameterSet:
        return init_scalar_critic(self.arch, rng)

    def _critic_loss(self, critic: dict[str, Tensor], group: ParameterGroup, batch: Batch,
                     next_actions: FloatArray, rng: np.random.Generator) -> Tensor:
        return scalar_critic_loss(critic, group.target.constants(), next_actions, self.arch, batch,
                                  self.spec.kappa, self.spec.gamma)

    def _critic_fn(self, group: ParameterGroup) -> tuple[CriticFn, FloatArray]:
        return scalar_critic_fn(group.critic.constants(), self.arch), self.UNIT

    def _actor_weights(self, group: ParameterGroup, batch: Batch) -> FloatArray:
        return np.ones(1)


@AgentRegistry.register(AgentVariant.IQNC_N, AgentVariant.IQNC_UCF, AgentVariant.IQNC_CF, AgentVariant.IQNC_M)
class QuantileActorCriticAgent(LearnedAgent):
    """Deterministic actor with a quantile critic and distortion weights on its quantiles."""

    def _init_group(self, rng: np.random.Generator) -> ParameterGroup:
        group = super()._init_group(rng)
        if self.variant == AgentVariant.IQNC_M:
            group.meta = init_meta(self.arch, rng)
        return group

    def _init_critic(self, rng: np.random.Generator) -> ParameterSet:
        return init_quantile_critic(self.arch, rng)

    @property
    def fractions(self) -> FloatArray:
        return fraction_grid(self.spec.n_quantiles)

    def _critic_loss(self, critic: dict[str, Tensor], group: ParameterGroup, batch: Batch,
                     next_actions: FloatArray, rng: np.random.Generator) -> Tensor:
        spec = self.spec
        if spec.random_fractions:
            fractions = random_fractions(spec.n_quantiles, rng)
            target_fractions = random_fractions(spec.n_target_quantiles, rng)
        else:
            fractions = fraction_grid(spec.n_quantiles)
            target_fractions = fraction_grid(spec.n_target_quantiles)
        return quantile_critic_loss(critic, group.target.constants(), next_actions, self.arch, batch, fractions,
                                    target_fractions, spec.kappa, spec.gamma, printed=spec.printed_loss)

    def _critic_fn(self, group: ParameterGroup) -> tuple[CriticFn, FloatArray]:
        fractions = self.fractions
        return quantile_critic_fn(group.critic.constants(), self.arch, midpoints(fractions)), fractions

    def _actor_weights(self, group: ParameterGroup, batch: Batch) -> FloatArray:
        if self.variant == AgentVariant.IQNC_M and group.meta is not None:
            with no_grad():
                return batch_meta_weights(group.meta.constants(), self.arch, batch).data
        if self.variant in (AgentVariant.IQNC_UCF, AgentVariant.IQNC_CF):
            return wang_weights(self.spec.risk_beta, midpoints(self.fractions)).values
        return np.ones(self.spec.n_quantiles)

    def quantiles(self, states: FloatArray, actions: FloatArray, bus_id: int = 0) -> QuantileSet:
        """Sorted critic quantiles at the training fraction grid."""
        fractions = self.fractions
        with no_grad():
            values = critic_quantiles(self.group(bus_id).critic.constants(), self.arch, states,
                                      np.asarray(actions, dtype=np.float64).reshape(-1, 1), midpoints(fractions))
        return QuantileSet(fractions, values.data).sorted()


def meta_weight_snapshot(agent: QuantileActorCriticAgent, graphs: Sequence[EventGraph],
                         bus_id: int = 0) -> WeightsByEventCount:
    """Mean meta weights per quantile midpoint, grouped by the number of events in the graph."""
    meta = agent.group(bus_id).meta
    if meta is None:
        raise ValueError(f"{agent.variant} has no meta-learner")
    if not graphs:
        return {}

    events, mask = pad_events([g.event_features() for g in graphs], EVENT_DIM)
    ego = np.stack([g.ego_features() for g in graphs])
    with no_grad():
        weights, _ = meta_weights(meta.constants(), agent.arch, ego, events, mask)

    counts = np.array([g.n_events for g in graphs])
    return {
        int(n): weights.data[counts == n].mean(axis=0).tolist()
        for n in np.unique(counts)
    }
