#!/usr/bin/env python3.12
"""
reward

Headway-regularity reward with a holding penalty.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.sim.simulator import fleet_headways
from transit_control_app.src.sim.state import SimState


@dataclass(frozen=True)
class RewardRecord:
    r: float
    cv2: float
    a: float
    w: float


def headway_cv2(headways: list[float], mean_headway: float) -> float:
    """Population variance of the headways over the squared schedule headway."""
    if len(headways) < 2:
        return 0.0
    return float(np.var(headways) / mean_headway**2)


def fleet_cv2(state: SimState) -> float:
    return headway_cv2(fleet_headways(state), state.route.dispatch_headway_mean)


def reward_from(cv2: float, a: float, w: float = config.reward_weight) -> RewardRecord:
    if not 0 <= a <= 1:
        raise ValueError(f"Action {a} outside [0, 1]")
    return RewardRecord(r=-(1 - w) * cv2 - w * a, cv2=cv2, a=a, w=w)


def compute_reward(state: SimState, a: float, w: float = config.reward_weight) -> RewardRecord:
    return reward_from(fleet_cv2(state), a, w)
