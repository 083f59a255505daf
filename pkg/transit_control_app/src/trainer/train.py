#!/usr/bin/env python3.12
"""
train

Training loop for the learned holding policies.

After every episode the loop takes `updates_per_episode` update steps once
the replay memory holds more than `buffer_threshold` experiences. Each
step updates the critic, then the actor, then (for the meta variant) the
distortion-weight learner.

Author: transit-control maintainers

Date: 17.10.2026
"""

import json
import logging
import math
import os
from collections import Counter
from dataclasses import dataclass

import numpy as np
import pandas as pd

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.actor_critic import QuantileActorCriticAgent, meta_weight_snapshot
from transit_control_app.src.agents.base import Agent
from transit_control_app.src.agents.factory import AgentFactory
from transit_control_app.src.agents.spec import AgentSpec
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.config.manager import RunConfig
from transit_control_app.src.env.config import EnvConfig
from transit_control_app.src.env.environment import TransitEnv
from transit_control_app.src.env.replay import ReplayMemory
from transit_control_app.src.errors import CheckpointError, ConfigError, DivergenceError
from transit_control_app.src.neural.checkpoint import load_checkpoint, save_checkpoint
from transit_control_app.src.sim.config import RouteSpec
from transit_control_app.src.trainer.episode import run_episode
from transit_control_app.src.trainer.manifest import write_run_manifest
from transit_control_app.src.types import FloatArray, WeightsByEventCount

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["episode", "mean_reward", "critic_loss", "mean_AHT"]
SNAPSHOT_GRAPHS = 200


@dataclass
class TrainingResult:
    agent: Agent
    memory: ReplayMemory
    curves: pd.DataFrame
    checkpoint: str | None = None
    snapshots: dict[int, WeightsByEventCount] | None = None


@dataclass
class SeedStreams:
    """Independent generators for initialization, exploration, minibatches and episode seeds."""
    init: np.random.Generator
    explore: np.random.Generator
    sample: np.random.Generator
    episodes: np.random.Generator

    @classmethod
    def from_seed(cls, seed: int) -> "SeedStreams":
        children = np.random.SeedSequence(seed).spawn(4)
        return cls(*(np.random.default_rng(child) for child in children))


def agent_spec_for(run: RunConfig) -> AgentSpec:
    if run.agent is None:
        raise ConfigError("Run document has no 'agent' section")
    return run.agent.replace(max_hold=run.env.max_hold)


def make_env(run: RunConfig, record_trajectory: bool = False) -> TransitEnv:
    env_cfg = EnvConfig(
        max_hold=run.env.max_hold,
        reward_weight=run.env.reward_weight,
        cv2_interval=run.env.cv2_interval,
        trajectory_interval=run.env.trajectory_interval,
        record_trajectory=record_trajectory and run.env.record_trajectory,
    )
    return TransitEnv(run.route, run.demand, run.sim, env_cfg, run.scenario)


def _check_divergence(loss: float, limit: float, episode: int) -> None:
    if not math.isfinite(loss) or loss > limit:
        raise DivergenceError(f"Critic loss {loss:.6g} exceeded {limit:.6g} after episode {episode}")


def _snapshot(agent: Agent, memory: ReplayMemory) -> WeightsByEventCount:
    if not isinstance(agent, QuantileActorCriticAgent):
        return {}
    experiences = [exp for bus_id in sorted(memory.buffers) for exp in memory.buffers[bus_id]]
    if not experiences:
        return {}
    picks = np.unique(np.linspace(0, len(experiences) - 1, num=min(SNAPSHOT_GRAPHS, len(experiences))).astype(int))
    # per-bus learners are pooled, each weighted by its graph count
    totals: dict[int, FloatArray] = {}
    counts: Counter[int] = Counter()
    for key in agent.groups:
        graphs = [experiences[i].g for i in picks
                  if agent.spec.shared_parameters or experiences[i].bus_id == key]
        if not graphs:
            continue
        per_count = Counter(g.n_events for g in graphs)
        for n, weights in meta_weight_snapshot(agent, graphs, bus_id=key).items():
            totals[n] = totals.get(n, 0.0) + per_count[n] * np.asarray(weights)
            counts[n] += per_count[n]
    return {n: (totals[n] / counts[n]).tolist() for n in sorted(totals)}


def train(run: RunConfig, out_dir: str | None = None, seed: int | None = None) -> TrainingResult:
    """Train the run's agent; with `out_dir`, write curves, checkpoint and manifest there."""
    spec = agent_spec_for(run)
    if not spec.variant.learns:
        raise ConfigError(f"Agent '{spec.variant}' has nothing to train")

    cfg = run.trainer if seed is None else run.trainer.replace(seed=seed)
    streams = SeedStreams.from_seed(cfg.seed)
    env = make_env(run)
    agent = AgentFactory.create_agent(spec, run.route, streams.init)
    memory = ReplayMemory(cfg.buffer_capacity, cfg.buffer_threshold)
    episode_seeds = streams.episodes.integers(0, 2**63 - 1, size=cfg.episodes)
    snapshots: dict[int, WeightsByEventCount] = {}

    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)

    rows = []
    for episode in range(cfg.episodes):
        agent.set_progress(episode / cfg.episodes)
        log = run_episode(agent, env, int(episode_seeds[episode]), train=True, rng=streams.explore, memory=memory)

        losses = []
        if not cfg.never_updates:
            for _ in range(cfg.updates_per_episode):
                if not memory.ready:
                    break
                stats = agent.update(memory, streams.sample, cfg.batch_size)
                if stats is not None:
                    _check_divergence(stats.critic_loss, cfg.divergence_limit, episode + 1)
                    losses.append(stats.critic_loss)

        row = {
            "episode": episode + 1,
            "mean_reward": float(np.mean(log.rewards)) if log.rewards else math.nan,
            "critic_loss": float(np.mean(losses)) if losses else math.nan,
            "mean_AHT": float(np.mean(log.holds)) if log.holds else 0.0,
        }
        rows.append(row)
        logger.info("Episode %d/%d: mean reward %.4f, critic loss %.4g, AHT %.1f s, memory %d",
                    episode + 1, cfg.episodes, row["mean_reward"], row["critic_loss"], row["mean_AHT"], len(memory))

        if spec.variant == AgentVariant.IQNC_M and episode in (0, cfg.episodes - 1):
            snapshots[episode + 1] = _snapshot(agent, memory)
            if out_dir is not None:
                with open(os.path.join(out_dir, f"meta_weights_{episode + 1}.json"), "w") as file:
                    json.dump({str(k): v for k, v in snapshots[episode + 1].items()}, file, indent=2)

    curves = pd.DataFrame(rows, columns=CURVE_COLUMNS)
    result = TrainingResult(agent=agent, memory=memory, curves=curves, snapshots=snapshots or None)

    if out_dir is not None:
        curves.to_csv(os.path.join(out_dir, config.curves_name), index=False)
        result.checkpoint = os.path.join(out_dir, config.checkpoint_name)
        save_checkpoint(result.checkpoint, agent.parameter_sets(), step=cfg.episodes, extra={
            "agent": agent.spec.to_dict(),
            "route": run.route.name,
            "seed": cfg.seed,
        })
        write_run_manifest(
            {"document": run.document, "trainer": cfg.to_dict(), "agent": agent.spec.to_dict()},
            run.sources,
            os.path.join(out_dir, config.manifest_name),
        )
    return result


def load_agent(path: str, route: RouteSpec, max_hold: float | None = None) -> Agent:
    """Rebuild a trained agent for `route` from its checkpoint."""
    sets, _, extra = load_checkpoint(path)
    if "agent" not in extra:
        raise CheckpointError(f"Checkpoint {path} does not record its agent")
    spec = AgentSpec.from_dict(extra["agent"])
    if max_hold is not None:
        spec = spec.replace(max_hold=max_hold)

    agent = AgentFactory.create_agent(spec, route, np.random.default_rng(0))
    agent.load_parameter_sets(sets)
    logger.debug("Loaded %s from %s", agent, path)
    return agent
