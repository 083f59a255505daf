#!/usr/bin/env python3.12
"""
base

This module provides an abstract class for control policies.

Author: transit-control maintainers

Date: 17.10.2026
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.spec import AgentSpec
from transit_control_app.src.env.observation import Observation
from transit_control_app.src.env.replay import ReplayMemory
from transit_control_app.src.neural.parameters import ParameterSet


@dataclass
class UpdateStats:
    critic_loss: float
    actor_objective: float
    meta_objective: float | None = None
    extra: dict[str, float] = field(default_factory=dict)


class Agent(ABC):
    def __init__(self, spec: AgentSpec) -> None:
        self.spec = spec
        self.variant = spec.variant
        self.progress = 0.0

    def __str__(self) -> str:
        return self.variant.value

    @property
    def learns(self) -> bool:
        return self.variant.learns

    @abstractmethod
    def act(self, obs: Observation, explore: bool = False, rng: np.random.Generator | None = None,
            bus_id: int = 0) -> float:
        """Normalized holding action in [0, 1]."""

    def set_progress(self, fraction: float) -> None:
        """Training progress in [0, 1]; drives the exploration schedule."""
        self.progress = min(1.0, max(0.0, fraction))

    def update(self, memory: ReplayMemory, rng: np.random.Generator,
               batch_size: int = config.batch_size) -> UpdateStats | None:
        return None

    def parameter_sets(self) -> dict[str, ParameterSet]:
        return {}

    def load_parameter_sets(self, sets: dict[str, ParameterSet]) -> None:
        if sets:
            raise ValueError(f"{self.variant} has no parameters to load")
