#!/usr/bin/env python3.12
"""
simulator

Deterministic discrete-event simulation of a single linear bus route.

Every call to `advance` moves the clock by one tick: passengers arrive,
buses are dispatched, cruise, dwell, hold and finish. Buses never overtake;
a follower that would pass its leader queues `follow_gap_km` behind it.

Author: transit-control maintainers

Date: 17.10.2026
"""

import logging

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.errors import ConfigError, SimulationError
from transit_control_app.src.sim.config import DemandMatrix, RouteSpec, SimConfig
from transit_control_app.src.sim.state import (
    ArrivalSnapshot,
    BusPhase,
    BusState,
    EventKind,
    Passenger,
    SimEvent,
    SimState,
    StopState,
)

logger = logging.getLogger(__name__)

SEED_MODULUS = 2**64


def init_episode(route: RouteSpec, demand: DemandMatrix, cfg: SimConfig, seed: int) -> SimState:
    """Schedule all services and return the state at clock 0."""
    if demand.n_stops != route.n_stops:
        raise ConfigError(f"Demand has {demand.n_stops} stops but route has {route.n_stops}")

    dispatch_seq, demand_seq, speed_seq, scenario_seq = np.random.SeedSequence(seed % SEED_MODULUS).spawn(4)
    rng_dispatch = np.random.default_rng(dispatch_seq)

    dispatch_times = [0.0]
    for _ in range(route.n_services - 1):
        gap = rng_dispatch.normal(route.dispatch_headway_mean, route.dispatch_headway_std)
        dispatch_times.append(dispatch_times[-1] + max(config.min_dispatch_gap, float(gap)))

    buses = [BusState(id=i, dispatch_time=t) for i, t in enumerate(dispatch_times)]
    stops = [StopState(index=i) for i in range(route.n_stops)]

    state = SimState(
        route=route,
        demand=demand,
        cfg=cfg,
        seed=seed,
        buses=buses,
        stops=stops,
        rng_dispatch=rng_dispatch,
        rng_demand=np.random.default_rng(demand_seq),
        rng_speed=np.random.default_rng(speed_seq),
        rng_scenario=np.random.default_rng(scenario_seq),
    )
    state.speed_multiplier = {bus.id: 1.0 for bus in buses}
    logger.debug("Scheduled %d services on %s", len(buses), route.name)
    return state


def spawn_passengers(state: SimState, dt: float, demand: DemandMatrix, rng: np.random.Generator, scale: float = 1.0) -> int:
    """Append Poisson arrivals for every OD pair to the stop queues."""
    if dt <= 0:
        raise ValueError("dt must be positive")

    counts = rng.poisson(demand.rates * (scale * dt / 3600.0))
    spawned = 0
    for origin, destination in zip(*np.nonzero(counts)):
        queue = state.stops[origin].queue
        for _ in range(int(counts[origin, destination])):
            queue.append(Passenger(int(origin), int(destination), state.clock))
        spawned += int(counts[origin, destination])

    state.ledger.spawned += spawned
    return spawned


def dwell_time(n_alight: int, n_board: int, cfg: SimConfig) -> float:
    """Single-door sequential service time."""
    if n_alight < 0 or n_board < 0:
        raise ValueError("Passenger counts must be non-negative")
    return cfg.alight_time_per_pax * n_alight + cfg.board_time_per_pax * n_board


def board_alight(state: SimState, bus_id: int, stop_index: int) -> tuple[int, int, int]:
    """Serve a stop: alight riders for this stop, inject surge riders, board FIFO up to capacity."""
    bus = state.bus(bus_id)
    now = state.clock

    staying = []
    for passenger in bus.occupancy:
        if passenger.destination == stop_index:
            passenger.alight_time = now
            state.ledger.alighted.append(passenger)
        else:
            staying.append(passenger)
    n_alight = len(bus.occupancy) - len(staying)
    bus.occupancy = staying

    _inject_surge(state, stop_index)

    queue = state.stops[stop_index].queue
    waiting = len(queue)
    n_board = 0
    while queue and len(bus.occupancy) < state.cfg.capacity:
        passenger = queue.popleft()
        passenger.board_time = now
        bus.occupancy.append(passenger)
        n_board += 1

    left_behind = len(queue)
    bus.arrival = ArrivalSnapshot(
        stop_index=stop_index,
        time=now,
        onboard_after_alight=len(staying),
        waiting_before_board=waiting,
        n_alight=n_alight,
        n_board=n_board,
        left_behind=left_behind,
    )
    return n_alight, n_board, left_behind


def apply_holding(state: SimState, bus_id: int, hold_seconds: float, max_hold: float = config.max_hold) -> None:
    """Extend the stop time of a dwelling bus by `hold_seconds` after its dwell ends."""
    if not 0 <= hold_seconds <= max_hold:
        raise ValueError(f"Holding {hold_seconds} s outside [0, {max_hold}]")

    bus = state.bus(bus_id)
    if bus.phase != BusPhase.DWELLING:
        raise SimulationError(f"Bus {bus_id} is {bus.phase}, holding needs a dwelling bus")

    bus.phase = BusPhase.HOLDING
    bus.phase_end_time = bus.dwell_end_time + hold_seconds
    bus.cumulative_hold += hold_seconds
    bus.decision_pending = False
    state.holds.append(hold_seconds)


def advance(state: SimState, events_out: list[SimEvent]) -> None:
    """Move the simulation forward by one tick."""
    if state.clock >= state.cfg.horizon:
        raise SimulationError("Clock already reached the horizon")

    state.clock = min(state.clock + state.cfg.tick, state.cfg.horizon)
    now = state.clock
    _refresh_speed_multipliers(state)
    spawn_passengers(state, state.cfg.tick, state.demand, state.rng_demand, state.demand_scale)

    leader: BusState | None = None
    for bus in state.buses:
        if bus.phase == BusPhase.WAITING_DISPATCH:
            if bus.dispatch_time <= now and _can_dispatch(bus, leader):
                _dispatch(state, bus)
                _arrive_if_reached(state, bus, events_out)
        elif bus.phase == BusPhase.CRUISING:
            _cruise(state, bus, leader)
            _arrive_if_reached(state, bus, events_out)
        elif bus.phase in (BusPhase.DWELLING, BusPhase.HOLDING):
            if now >= bus.phase_end_time:
                _depart(state, bus, events_out)

        if bus.phase != BusPhase.FINISHED:
            leader = bus

    if now >= state.cfg.horizon:
        for bus in state.buses:
            if bus.phase != BusPhase.FINISHED:
                bus.phase = BusPhase.FINISHED
                bus.decision_pending = False
                events_out.append(SimEvent(EventKind.FINISHED, bus.id, bus.next_stop, now))


def project_headways(state: SimState, bus_id: int) -> tuple[float, float]:
    """Forward and backward headways projected at nominal speed."""
    sentinel = state.route.dispatch_headway_mean
    to_seconds = 3600.0 / state.cfg.nominal_speed
    bus = state.bus(bus_id)

    leader = _neighbour(state, bus_id, -1)
    follower = _neighbour(state, bus_id, +1)

    h_fwd = (leader.position - bus.position) * to_seconds if leader else sentinel
    h_bwd = (bus.position - follower.position) * to_seconds if follower else sentinel
    return max(0.0, h_fwd), max(0.0, h_bwd)


def fleet_headways(state: SimState) -> list[float]:
    """Projected headways between consecutive active buses, front to back."""
    to_seconds = 3600.0 / state.cfg.nominal_speed
    active = state.active_buses()
    return [(a.position - b.position) * to_seconds for a, b in zip(active, active[1:])]


def sample_link_speed(state: SimState) -> float:
    cfg = state.cfg
    factor = state.rng_speed.uniform(cfg.speed_noise_lo, cfg.speed_noise_hi)
    return cfg.nominal_speed * float(factor) * state.speed_scale


def _neighbour(state: SimState, bus_id: int, step: int) -> BusState | None:
    if not state.bus(bus_id).is_active:
        return None
    index = bus_id + step
    while 0 <= index < len(state.buses):
        candidate = state.buses[index]
        if candidate.is_active:
            return candidate
        if step > 0 and candidate.phase == BusPhase.WAITING_DISPATCH:
            return None
        index += step
    return None


def _can_dispatch(bus: BusState, leader: BusState | None) -> bool:
    if leader is None:
        return True
    if leader.phase == BusPhase.WAITING_DISPATCH:
        return False
    return leader.position >= config.follow_gap_km


def _dispatch(state: SimState, bus: BusState) -> None:
    bus.phase = BusPhase.CRUISING
    bus.position = 0.0
    bus.next_stop = 0
    bus.start_time = state.clock
    bus.link_speed = sample_link_speed(state)


def _cruise(state: SimState, bus: BusState, leader: BusState | None) -> None:
    speed = bus.link_speed * state.speed_multiplier.get(bus.id, 1.0)
    target = state.route.stop_positions[bus.next_stop]
    position = min(bus.position + speed * state.cfg.tick / 3600.0, target)
    if leader is not None and leader.is_active:
        position = min(position, leader.position - config.follow_gap_km)
    bus.position = max(bus.position, position)


def _arrive_if_reached(state: SimState, bus: BusState, events_out: list[SimEvent]) -> None:
    stop_index = bus.next_stop
    if bus.position < state.route.stop_positions[stop_index]:
        return

    now = state.clock
    bus.position = state.route.stop_positions[stop_index]
    events_out.append(SimEvent(EventKind.ARRIVED, bus.id, stop_index, now))
    n_alight, n_board, _ = board_alight(state, bus.id, stop_index)

    if stop_index == state.route.n_stops - 1:
        bus.phase = BusPhase.FINISHED
        bus.terminal_time = now
        bus.decision_pending = False
        events_out.append(SimEvent(EventKind.FINISHED, bus.id, stop_index, now))
        return

    bus.phase = BusPhase.DWELLING
    bus.dwell_end_time = now + dwell_time(n_alight, n_board, state.cfg)
    bus.phase_end_time = bus.dwell_end_time
    bus.decision_pending = True


def _depart(state: SimState, bus: BusState, events_out: list[SimEvent]) -> None:
    bus.decision_pending = False
    state.departure_occupancy.append(len(bus.occupancy))
    events_out.append(SimEvent(EventKind.DEPARTED, bus.id, bus.next_stop, state.clock))
    bus.next_stop += 1
    bus.phase = BusPhase.CRUISING
    bus.link_speed = sample_link_speed(state)


def _refresh_speed_multipliers(state: SimState) -> None:
    now = state.clock
    for bus_id in state.speed_multiplier:
        state.speed_multiplier[bus_id] = 1.0
    for interruption in state.interruptions:
        if interruption.start <= now < interruption.end:
            for bus_id in interruption.bus_ids:
                state.speed_multiplier[bus_id] *= interruption.factor


def _inject_surge(state: SimState, stop_index: int) -> None:
    now = state.clock
    downstream = state.route.n_stops - stop_index - 1
    if downstream <= 0:
        return

    for surge in state.surges:
        if stop_index not in surge.stops or not surge.start <= now < surge.end or surge.extra_pax <= 0:
            continue
        rates = state.demand.outbound(stop_index)[stop_index + 1:]
        total = rates.sum()
        weights = rates / total if total > 0 else np.full(downstream, 1.0 / downstream)
        destinations = state.rng_scenario.choice(downstream, size=surge.extra_pax, p=weights) + stop_index + 1
        queue = state.stops[stop_index].queue
        for destination in destinations:
            queue.append(Passenger(stop_index, int(destination), now))
        state.ledger.spawned += surge.extra_pax
