#!/usr/bin/env python3.12
"""
state

Dynamic world state advanced by the simulator tick loop.

Author: transit-control maintainers

Date: 17.10.2026
"""

from collections import deque
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

import numpy as np

from transit_control_app.src.sim.config import DemandMatrix, RouteSpec, SimConfig


class BusPhase(StrEnum):
    WAITING_DISPATCH = "waiting-dispatch"
    CRUISING = "cruising"
    DWELLING = "dwelling"
    HOLDING = "holding"
    FINISHED = "finished"

    @classmethod
    def list(cls) -> list[str]:
        return [c.value for c in cls]

    @classmethod
    def active(cls) -> tuple["BusPhase", ...]:
        return (cls.CRUISING, cls.DWELLING, cls.HOLDING)


class EventKind(StrEnum):
    ARRIVED = "bus-arrived-at-stop"
    DEPARTED = "bus-departed-stop"
    FINISHED = "bus-finished"


@dataclass(frozen=True)
class SimEvent:
    kind: EventKind
    bus_id: int
    stop_index: int
    time: float


@dataclass
class Passenger:
    origin: int
    destination: int
    arrival_time: float
    board_time: float | None = None
    alight_time: float | None = None


@dataclass
class StopState:
    index: int
    queue: deque[Passenger] = field(default_factory=deque)


@dataclass
class ArrivalSnapshot:
    """Counts seen by a bus at its last stop arrival, before boarding."""
    stop_index: int
    time: float
    onboard_after_alight: int
    waiting_before_board: int
    n_alight: int
    n_board: int
    left_behind: int


@dataclass
class BusState:
    id: int
    dispatch_time: float
    start_time: float | None = None
    phase: BusPhase = BusPhase.WAITING_DISPATCH
    position: float = 0.0
    link_speed: float = 0.0
    occupancy: list[Passenger] = field(default_factory=list)
    next_stop: int = 0
    phase_end_time: float = 0.0
    dwell_end_time: float = 0.0
    cumulative_hold: float = 0.0
    decision_pending: bool = False
    arrival: ArrivalSnapshot | None = None
    terminal_time: float | None = None

    @property
    def is_active(self) -> bool:
        return self.phase in BusPhase.active()

    @property
    def destinations(self) -> list[int]:
        return [p.destination for p in self.occupancy]


@dataclass
class Interruption:
    bus_ids: frozenset[int]
    factor: float
    start: float
    end: float


@dataclass
class Surge:
    stops: frozenset[int]
    extra_pax: int
    start: float
    end: float


@dataclass
class PassengerLedger:
    """Bookkeeping behind the conservation invariant and the passenger metrics."""
    spawned: int = 0
    alighted: list[Passenger] = field(default_factory=list)

    @property
    def n_alighted(self) -> int:
        return len(self.alighted)


@dataclass
class SimState:
    route: RouteSpec
    demand: DemandMatrix
    cfg: SimConfig
    seed: int
    buses: list[BusState]
    stops: list[StopState]
    rng_dispatch: np.random.Generator
    rng_demand: np.random.Generator
    rng_speed: np.random.Generator
    rng_scenario: np.random.Generator
    clock: float = 0.0
    demand_scale: float = 1.0
    speed_scale: float = 1.0
    interruptions: list[Interruption] = field(default_factory=list)
    surges: list[Surge] = field(default_factory=list)
    speed_multiplier: dict[int, float] = field(default_factory=dict)
    ledger: PassengerLedger = field(default_factory=PassengerLedger)
    departure_occupancy: list[int] = field(default_factory=list)
    holds: list[float] = field(default_factory=list)

    @property
    def done(self) -> bool:
        return self.clock >= self.cfg.horizon or all(b.phase == BusPhase.FINISHED for b in self.buses)

    def bus(self, bus_id: int) -> BusState:
        return self.buses[bus_id]

    def active_buses(self) -> list[BusState]:
        """Active buses ordered from the front of the route backwards."""
        return [b for b in self.buses if b.is_active]

    def n_waiting(self) -> int:
        return sum(len(s.queue) for s in self.stops)

    def n_onboard(self) -> int:
        return sum(len(b.occupancy) for b in self.buses)
