#!/usr/bin/env python3.12
"""
episode

One rollout of a control policy over a simulated day.

Every arrival at a non-terminal stop is a decision point for that bus. The
reward for a bus's previous decision is observed at its next decision
point, where the completed (s, a, r, s', g) tuple is stored. The first
decision of a bus therefore yields no experience and its last one is
dropped when the episode ends.

Author: transit-control maintainers

Date: 17.10.2026
"""

import logging
from typing import Sequence

import numpy as np

from transit_control_app.src.agents.base import Agent
from transit_control_app.src.env.environment import EpisodeLog, TransitEnv
from transit_control_app.src.env.events import DecisionRecord
from transit_control_app.src.env.replay import Experience, ReplayMemory
from transit_control_app.src.scenario.spec import AnomalySpec, ScenarioDraw

logger = logging.getLogger(__name__)


def run_episode(agent: Agent, env: TransitEnv, seed: int, train: bool = False,
                rng: np.random.Generator | None = None, memory: ReplayMemory | None = None,
                anomalies: Sequence[AnomalySpec] | None = None, draw: ScenarioDraw | None = None) -> EpisodeLog:
    """Run `agent` on `env` until the horizon and return the finished log."""
    if train and rng is None:
        raise ValueError("Training rollouts need a random generator for exploration")

    env.reset(seed, train=train, draw=draw, anomalies=anomalies)
    last: dict[int, DecisionRecord] = {}
    stored = 0

    while not env.done:
        for bus_id in env.step():
            obs = env.observe(bus_id)
            previous = last.get(bus_id)
            if previous is not None:
                reward = env.reward(previous.action)
                if memory is not None:
                    memory.push(Experience(
                        bus_id=bus_id,
                        s=previous.obs,
                        a=previous.action,
                        r=reward.r,
                        s_next=obs,
                        g=env.event_graph(previous),
                        reward_time=env.state.clock,
                    ))
                    stored += 1

            a = agent.act(obs, explore=train, rng=rng, bus_id=bus_id)
            last[bus_id] = env.act(bus_id, obs, a)

    log = env.log
    logger.debug("Episode seed=%d agent=%s: %d decisions, %d experiences stored",
                 seed, agent, len(log.decisions), stored)
    return log
