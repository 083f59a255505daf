#!/usr/bin/env python3.12
"""
registry

Module for automatic agent class registration.

Author: transit-control maintainers

Date: 17.10.2026
"""

from typing import Callable, Type

from transit_control_app.src.agents.base import Agent
from transit_control_app.src.agents.variant import AgentVariant


class AgentRegistry:
    """Registry for agent classes."""

    _classes: dict[AgentVariant, Type[Agent]] = {}

    @classmethod
    def register(cls, *variants: AgentVariant) -> Callable[[Type[Agent]], Type[Agent]]:
        """Decorator to register an agent class for one or more variants."""
        def decorator(agent_class: Type[Agent]) -> Type[Agent]:
            for variant in variants:
                cls._classes[variant] = agent_class
            return agent_class
        return decorator

    @classmethod
    def get_class(cls, variant: str) -> Type[Agent]:
        return cls._classes[AgentVariant(variant)]

    @classmethod
    def get_all_variants(cls) -> list[str]:
        return [v.value for v in cls._classes.keys()]
