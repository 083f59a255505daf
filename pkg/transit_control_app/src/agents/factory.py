#!/usr/bin/env python3.12
"""
factory

This module provides factory for control policies

Author: transit-control maintainers

Date: 17.10.2026
"""

import importlib

import numpy as np

from transit_control_app.src.agents.base import Agent
from transit_control_app.src.agents.registry import AgentRegistry
from transit_control_app.src.agents.spec import AgentSpec, FHConfig
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.sim.config import RouteSpec

AGENT_MODULES = {
    AgentVariant.NC: "rule",
    AgentVariant.FH: "rule",
    AgentVariant.IAC: "actor_critic",
    AgentVariant.IQNC_N: "actor_critic",
    AgentVariant.IQNC_UCF: "actor_critic",
    AgentVariant.IQNC_CF: "actor_critic",
    AgentVariant.IQNC_M: "actor_critic",
}


class AgentFactory:
    @staticmethod
    def create_agent(spec: AgentSpec, route: RouteSpec, rng: np.random.Generator) -> Agent:
        """Build the agent for `spec`, filling route-dependent defaults."""
        try:
            variant = AgentVariant(spec.variant)
            importlib.import_module(f"transit_control_app.src.agents.{AGENT_MODULES[variant]}")
            agent_class = AgentRegistry.get_class(variant)
        except (ValueError, KeyError) as e:
            raise ValueError(f"Invalid agent variant. Valid variants are: {AgentVariant.str()}") from e

        if variant == AgentVariant.FH and spec.fh is None:
            spec = spec.replace(fh=FHConfig(headway=route.dispatch_headway_mean))
        spec = spec.replace(n_agents=route.n_services)

        if variant.learns:
            return agent_class(spec, rng)  # type: ignore[call-arg]
        return agent_class(spec)
