#!/usr/bin/env python3.12
"""
config

Settings of the training loop and of evaluation runs.

Author: transit-control maintainers

Date: 17.10.2026
"""

import dataclasses
import math
from dataclasses import dataclass
from typing import Any

import transit_control_app.src.config.base as config
from transit_control_app.src.errors import ConfigError


@dataclass(frozen=True)
class TrainerConfig:
    """
    Attributes:
        episodes: number of training episodes
        buffer_threshold: stored experiences B required before updates start
        batch_size: minibatch size c
        buffer_capacity: ring size of each per-bus buffer
        updates_per_episode: update triples taken after each episode
        divergence_limit: critic loss above which training aborts
        eval_seeds: paired seeds per evaluation cell
        seed: root seed of the run
    """
    episodes: int = config.episodes
    buffer_threshold: float = config.buffer_threshold
    batch_size: int = config.batch_size
    buffer_capacity: int = config.buffer_capacity
    updates_per_episode: int = config.updates_per_episode
    divergence_limit: float = config.divergence_limit
    eval_seeds: int = config.eval_seeds
    seed: int = 0

    def __post_init__(self) -> None:
        errors = []
        if self.episodes < 1:
            errors.append("Trainer 'episodes' must be >= 1")
        if self.buffer_threshold < 0:
            errors.append("Trainer 'buffer_threshold' must be non-negative")
        if self.batch_size < 1:
            errors.append("Trainer 'batch_size' must be >= 1")
        if self.buffer_capacity < 1:
            errors.append("Trainer 'buffer_capacity' must be >= 1")
        if self.updates_per_episode < 0:
            errors.append("Trainer 'updates_per_episode' must be non-negative")
        if not self.divergence_limit > 0:
            errors.append("Trainer 'divergence_limit' must be strictly positive")
        if self.eval_seeds < 1:
            errors.append("Trainer 'eval_seeds' must be >= 1")
        if errors:
            raise ConfigError(errors)

    @property
    def never_updates(self) -> bool:
        return math.isinf(self.buffer_threshold) or self.updates_per_episode == 0

    def replace(self, **changes: Any) -> "TrainerConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        data = dataclasses.asdict(self)
        if math.isinf(self.buffer_threshold):
            data["buffer_threshold"] = "inf"
        return data
