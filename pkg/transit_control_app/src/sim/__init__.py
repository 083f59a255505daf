"""
Single-route bus simulator.
"""

from transit_control_app.src.sim.config import DemandMatrix, RouteSpec, SimConfig, synthetic_demand
from transit_control_app.src.sim.simulator import (
    advance,
    apply_holding,
    board_alight,
    dwell_time,
    fleet_headways,
    init_episode,
    project_headways,
    spawn_passengers,
)
from transit_control_app.src.sim.state import BusPhase, BusState, EventKind, SimEvent, SimState, StopState

__all__ = [
    "BusPhase",
    "BusState",
    "DemandMatrix",
    "EventKind",
    "RouteSpec",
    "SimConfig",
    "SimEvent",
    "SimState",
    "StopState",
    "advance",
    "apply_holding",
    "board_alight",
    "dwell_time",
    "fleet_headways",
    "init_episode",
    "project_headways",
    "spawn_passengers",
    "synthetic_demand",
]
