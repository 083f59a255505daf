#!/usr/bin/env python3.12
"""
rule

Rule-based policies: no control and forward-headway holding.

Author: transit-control maintainers

Date: 17.10.2026
"""

import numpy as np

from transit_control_app.src.agents.base import Agent
from transit_control_app.src.agents.registry import AgentRegistry
from transit_control_app.src.agents.spec import AgentSpec, FHConfig
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.env.observation import Observation
from transit_control_app.src.errors import ConfigError


def fh_hold(obs: Observation, cfg: FHConfig, max_hold: float) -> float:
    """d = max(0, mean_delay + gain * (H0 - h_fwd)), capped at `max_hold` seconds."""
    hold = cfg.mean_delay + cfg.gain * (cfg.headway - obs.h_fwd)
    return min(max_hold, max(0.0, hold))


@AgentRegistry.register(AgentVariant.NC)
class NoControlAgent(Agent):
    def act(self, obs: Observation, explore: bool = False, rng: np.random.Generator | None = None,
            bus_id: int = 0) -> float:
        return 0.0


@AgentRegistry.register(AgentVariant.FH)
class ForwardHeadwayAgent(Agent):
    def __init__(self, spec: AgentSpec) -> None:
        super().__init__(spec)
        if spec.fh is None:
            raise ConfigError("FH agent needs its headway parameters")
        self.fh = spec.fh

    def act(self, obs: Observation, explore: bool = False, rng: np.random.Generator | None = None,
            bus_id: int = 0) -> float:
        return fh_hold(obs, self.fh, self.spec.max_hold) / self.spec.max_hold
