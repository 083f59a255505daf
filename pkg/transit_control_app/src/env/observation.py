#!/usr/bin/env python3.12
"""
observation

Local state seen by a bus agent when it arrives at a stop.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass
from typing import Any

import numpy as np

from transit_control_app.src.errors import DecisionPointError
from transit_control_app.src.sim.simulator import project_headways
from transit_control_app.src.sim.state import BusPhase, SimState
from transit_control_app.src.types import FloatArray

N_FEATURES = 4


@dataclass(frozen=True)
class Observation:
    """Raw local state plus its normalized copy used as network input.

    Headways are divided by the schedule headway and counts by the bus
    capacity.
    """
    h_fwd: float
    h_bwd: float
    onboard: int
    waiting: int
    headway_scale: float
    capacity: int

    def __post_init__(self) -> None:
        raw = (self.h_fwd, self.h_bwd, self.onboard, self.waiting)
        if not all(np.isfinite(raw)) or min(raw) < 0:
            raise ValueError(f"Observation features must be finite and non-negative, got {raw}")

    @property
    def normalized(self) -> FloatArray:
        return np.array([
            self.h_fwd / self.headway_scale,
            self.h_bwd / self.headway_scale,
            self.onboard / self.capacity,
            self.waiting / self.capacity,
        ])

    def to_dict(self) -> dict[str, Any]:
        return {
            "h_fwd": self.h_fwd,
            "h_bwd": self.h_bwd,
            "onboard": self.onboard,
            "waiting": self.waiting,
        }


def observe(state: SimState, bus_id: int) -> Observation:
    """Observation of a bus that has just arrived at a stop."""
    bus = state.bus(bus_id)
    if bus.phase != BusPhase.DWELLING or not bus.decision_pending or bus.arrival is None:
        raise DecisionPointError(f"Bus {bus_id} is not at a decision point ({bus.phase})")

    h_fwd, h_bwd = project_headways(state, bus_id)
    return Observation(
        h_fwd=h_fwd,
        h_bwd=h_bwd,
        onboard=bus.arrival.onboard_after_alight,
        waiting=bus.arrival.waiting_before_board,
        headway_scale=state.route.dispatch_headway_mean,
        capacity=state.cfg.capacity,
    )
