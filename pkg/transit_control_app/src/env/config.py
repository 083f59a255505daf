#!/usr/bin/env python3.12
"""
config

Environment-level settings of the control problem.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass

import transit_control_app.src.config.base as config
from transit_control_app.src.errors import ConfigError


@dataclass(frozen=True)
class EnvConfig:
    max_hold: float = config.max_hold
    reward_weight: float = config.reward_weight
    cv2_interval: float = config.cv2_interval
    trajectory_interval: float = config.trajectory_interval
    record_trajectory: bool = True

    def __post_init__(self) -> None:
        errors = []
        if self.max_hold <= 0:
            errors.append("Env 'max_hold_s' must be strictly positive")
        if not 0 <= self.reward_weight <= 1:
            errors.append("Env 'reward_weight' must lie in [0, 1]")
        if self.cv2_interval <= 0 or self.trajectory_interval <= 0:
            errors.append("Env sampling intervals must be strictly positive")
        if errors:
            raise ConfigError(errors)
