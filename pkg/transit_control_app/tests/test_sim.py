#!/usr/bin/env python3.12
"""
test_sim

Module created to test the bus route simulator.

Author: transit-control maintainers

Date: 17.10.2026
"""

import numpy as np
import pytest

import transit_control_app.src.config.base as config
from transit_control_app.src.env.environment import TransitEnv
from transit_control_app.src.errors import ConfigError, SimulationError
from transit_control_app.src.oracles import invariant_episode
from transit_control_app.src.scenario.anomaly import apply_demand_surge
from transit_control_app.src.scenario.spec import AnomalyKind, AnomalySpec
from transit_control_app.src.sim.config import DemandMatrix, RouteSpec, SimConfig, synthetic_demand
from transit_control_app.src.sim.simulator import (
    advance,
    apply_holding,
    board_alight,
    dwell_time,
    init_episode,
    project_headways,
    spawn_passengers,
)
from transit_control_app.src.sim.state import BusPhase, Passenger, SimState
from transit_control_app.src.sim.trajectory import read_trajectory_csv, write_trajectory_csv

#### configuration ####

def test_route_rejects_unordered_stops() -> None:
    with pytest.raises(ConfigError):
        RouteSpec((0.0, 2.0, 1.0), 3, 300.0, 0.0, 1.0)

def test_route_rejects_length_mismatch() -> None:
    with pytest.raises(ConfigError):
        RouteSpec((0.0, 1.0, 2.0), 3, 300.0, 0.0, 2.5)

def test_demand_rejects_backward_trips() -> None:
    rates = np.zeros((3, 3))
    rates[2, 0] = 5.0
    with pytest.raises(ConfigError):
        DemandMatrix(rates)

def test_synthetic_demand_total(line_route: RouteSpec) -> None:
    demand = synthetic_demand(line_route, 600.0, decay_km=3.0, seed=4)

    assert demand.rates.sum() == pytest.approx(600.0)
    assert np.all(np.tril(demand.rates) == 0)

def test_sim_config_rejects_zero_capacity() -> None:
    with pytest.raises(ConfigError):
        SimConfig(capacity=0)

#### dwell and boarding ####

def test_dwell_time_is_sequential() -> None:
    assert dwell_time(2, 3, SimConfig()) == pytest.approx(2 * 1.8 + 3 * 3.0)
    assert dwell_time(0, 0, SimConfig()) == 0.0

def test_dwell_time_negative_count() -> None:
    with pytest.raises(ValueError):
        dwell_time(-1, 0, SimConfig())

def test_board_alight_respects_capacity(empty_state: SimState) -> None:
    queue = empty_state.stops[0].queue
    for _ in range(5):
        queue.append(Passenger(0, 2, 0.0))

    n_alight, n_board, left_behind = board_alight(empty_state, 0, 0)

    assert (n_alight, n_board, left_behind) == (0, 2, 3)
    assert len(empty_state.bus(0).occupancy) == empty_state.cfg.capacity
    assert empty_state.bus(0).arrival.waiting_before_board == 5

def test_board_alight_drops_riders_at_destination(empty_state: SimState) -> None:
    bus = empty_state.bus(0)
    bus.occupancy = [Passenger(0, 1, 0.0, board_time=0.0), Passenger(0, 2, 0.0, board_time=0.0)]
    empty_state.clock = 120.0

    n_alight, n_board, _ = board_alight(empty_state, 0, 1)

    assert (n_alight, n_board) == (1, 0)
    assert bus.destinations == [2]
    assert empty_state.ledger.alighted[0].alight_time == 120.0

def test_surge_without_outbound_demand_is_uniform() -> None:
    route = RouteSpec(stop_positions=(0.0, 1.0, 2.0, 3.0, 4.0), n_services=1, dispatch_headway_mean=300.0,
                      dispatch_headway_std=0.0, route_length=4.0, name="five")
    demand = DemandMatrix(np.zeros((5, 5)))
    state = init_episode(route, demand, SimConfig(capacity=10, horizon=3600.0), seed=0)
    apply_demand_surge(state, AnomalySpec(AnomalyKind.DEMAND_SURGE, (0.0, 600.0), (1,), extra_pax=30000))
    state.clock = 60.0

    board_alight(state, 0, 1)

    destinations = [p.destination for p in state.stops[1].queue] + state.bus(0).destinations
    histogram = np.bincount(destinations, minlength=5)
    assert histogram.sum() == 30000
    assert histogram[:2].tolist() == [0, 0]
    assert histogram[2:] == pytest.approx([10000] * 3, rel=0.05)

def test_spawn_without_demand(empty_state: SimState) -> None:
    assert spawn_passengers(empty_state, 60.0, empty_state.demand, np.random.default_rng(0)) == 0
    assert empty_state.n_waiting() == 0

def test_spawn_needs_positive_step(empty_state: SimState) -> None:
    with pytest.raises(ValueError):
        spawn_passengers(empty_state, 0.0, empty_state.demand, np.random.default_rng(0))

#### scheduling and motion ####

def test_dispatch_schedule_is_seeded(line_route: RouteSpec) -> None:
    route = RouteSpec(line_route.stop_positions, 5, 300.0, 120.0, 2.0)
    demand = DemandMatrix(np.zeros((3, 3)))
    first = init_episode(route, demand, SimConfig(), seed=9)
    second = init_episode(route, demand, SimConfig(), seed=9)

    times = [b.dispatch_time for b in first.buses]
    assert times == [b.dispatch_time for b in second.buses]
    assert times[0] == 0.0
    assert min(np.diff(times)) >= config.min_dispatch_gap - 1e-9

def test_init_rejects_demand_of_other_route(line_route: RouteSpec) -> None:
    with pytest.raises(ConfigError):
        init_episode(line_route, DemandMatrix(np.zeros((4, 4))), SimConfig(), seed=0)

def test_advance_past_horizon(empty_state: SimState) -> None:
    empty_state.clock = empty_state.cfg.horizon
    with pytest.raises(SimulationError):
        advance(empty_state, [])

def test_first_bus_leaves_at_clock_zero(empty_state: SimState) -> None:
    events: list = []
    advance(empty_state, events)

    # the first stop sits at km 0, so dispatch and arrival coincide
    assert empty_state.bus(0).phase == BusPhase.DWELLING
    assert empty_state.bus(1).phase == BusPhase.WAITING_DISPATCH
    assert [e.bus_id for e in events] == [0]

def test_follower_is_clamped_behind_leader(empty_state: SimState) -> None:
    leader, follower = empty_state.bus(0), empty_state.bus(1)
    leader.phase, leader.position, leader.next_stop, leader.phase_end_time = BusPhase.DWELLING, 1.0, 1, 1000.0
    follower.phase, follower.position, follower.next_stop = BusPhase.CRUISING, 0.998, 1
    follower.link_speed = 30.0

    for _ in range(10):
        advance(empty_state, [])
        assert follower.position == pytest.approx(leader.position - config.follow_gap_km)
        assert follower.position < leader.position
        assert follower.phase == BusPhase.CRUISING

def test_project_headways(empty_state: SimState) -> None:
    lone = empty_state.bus(0)
    lone.phase, lone.position = BusPhase.CRUISING, 1.0

    assert project_headways(empty_state, 0) == (300.0, 300.0)

    follower = empty_state.bus(1)
    follower.phase, follower.position = BusPhase.CRUISING, 0.5

    # 0.5 km at 30 km/h
    assert project_headways(empty_state, 0) == (300.0, pytest.approx(60.0))
    assert project_headways(empty_state, 1) == (pytest.approx(60.0), 300.0)

#### holding ####

def test_holding_needs_dwelling_bus(empty_state: SimState) -> None:
    with pytest.raises(SimulationError):
        apply_holding(empty_state, 0, 10.0)

def test_holding_outside_range(empty_state: SimState) -> None:
    advance(empty_state, [])
    with pytest.raises(ValueError):
        apply_holding(empty_state, 0, 181.0, max_hold=180.0)

def test_holding_extends_stop_time(empty_state: SimState) -> None:
    advance(empty_state, [])
    bus = empty_state.bus(0)
    apply_holding(empty_state, 0, 45.0)

    assert bus.phase == BusPhase.HOLDING
    assert bus.phase_end_time == bus.dwell_end_time + 45.0
    assert empty_state.holds == [45.0]
    assert not bus.decision_pending

#### whole episodes ####

def test_episode_invariants(desk_env: TransitEnv) -> None:
    digest, ticks, violations = invariant_episode(desk_env, seed=3)

    assert ticks > 0
    assert violations == []
    assert invariant_episode(desk_env, seed=3)[0] == digest

def test_episode_seeds_differ(desk_env: TransitEnv) -> None:
    assert invariant_episode(desk_env, seed=1)[0] != invariant_episode(desk_env, seed=2)[0]

def test_trajectory_csv_keeps_header(desk_env: TransitEnv, tmp_path) -> None:
    invariant_episode(desk_env, seed=5)
    path = str(tmp_path / "trajectory.csv")
    write_trajectory_csv(desk_env.log.trajectory, path)

    log = read_trajectory_csv(path)
    assert log.capacity == config.capacity
    assert log.route_length == pytest.approx(5.4)
    assert len(log.rows) == len(desk_env.log.trajectory.rows)
    assert log.bus_ids() == desk_env.log.trajectory.bus_ids()
