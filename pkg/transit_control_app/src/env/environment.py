#!/usr/bin/env python3.12
"""
environment

Asynchronous multi-agent wrapper around the simulator.

Buses become decision points when they arrive at a non-terminal stop.
The caller observes them, chooses a normalized holding action and the
environment turns it into a hold of `a * max_hold` seconds.

Author: transit-control maintainers

Date: 17.10.2026
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence

from transit_control_app.src.env.config import EnvConfig
from transit_control_app.src.env.events import DecisionRecord, EventGraph, collect_events
from transit_control_app.src.env.observation import Observation, observe
from transit_control_app.src.env.reward import RewardRecord, compute_reward, fleet_cv2
from transit_control_app.src.errors import SimulationError
from transit_control_app.src.scenario.anomaly import apply_anomaly
from transit_control_app.src.scenario.perturbation import sample_episode_scenario
from transit_control_app.src.scenario.spec import AnomalySpec, ScenarioConfig, ScenarioDraw
from transit_control_app.src.sim.config import DemandMatrix, RouteSpec, SimConfig
from transit_control_app.src.sim.simulator import advance, apply_holding, init_episode
from transit_control_app.src.sim.state import EventKind, Passenger, SimEvent, SimState
from transit_control_app.src.sim.trajectory import TrajectoryLog
from transit_control_app.src.types import CV2Sample

logger = logging.getLogger(__name__)


@dataclass
class EpisodeLog:
    """Everything metrics and plots need from one finished episode."""
    route_name: str
    seed: int
    draw: ScenarioDraw
    anomalies: list[AnomalySpec]
    trajectory: TrajectoryLog
    decisions: list[DecisionRecord] = field(default_factory=list)
    cv2_samples: list[CV2Sample] = field(default_factory=list)
    holds: list[float] = field(default_factory=list)
    passengers: list[Passenger] = field(default_factory=list)
    bus_times: list[tuple[float | None, float | None]] = field(default_factory=list)
    departure_occupancy: list[int] = field(default_factory=list)
    rewards: list[float] = field(default_factory=list)
    horizon: float = 0.0

    def finalize(self, state: SimState) -> None:
        self.holds = list(state.holds)
        onboard = [p for bus in state.buses for p in bus.occupancy]
        self.passengers = list(state.ledger.alighted) + onboard
        self.bus_times = [(b.start_time, b.terminal_time) for b in state.buses]
        self.departure_occupancy = list(state.departure_occupancy)
        self.decisions.sort(key=lambda d: (d.time, d.bus_id))
        self.horizon = state.cfg.horizon


class TransitEnv:
    def __init__(self, route: RouteSpec, demand: DemandMatrix, sim_cfg: SimConfig,
                 env_cfg: EnvConfig | None = None, scenario_cfg: ScenarioConfig | None = None) -> None:
        self.route = route
        self.demand = demand
        self.sim_cfg = sim_cfg
        self.env_cfg = env_cfg or EnvConfig()
        self.scenario_cfg = scenario_cfg or ScenarioConfig()
        self._state: SimState | None = None
        self._log: EpisodeLog | None = None
        self._next_cv2 = 0.0
        self._next_trajectory = 0.0

    @property
    def state(self) -> SimState:
        if self._state is None:
            raise SimulationError("Environment has not been reset")
        return self._state

    @property
    def log(self) -> EpisodeLog:
        if self._log is None:
            raise SimulationError("Environment has not been reset")
        return self._log

    @property
    def done(self) -> bool:
        return self.state.done

    @property
    def n_buses(self) -> int:
        return self.route.n_services

    def reset(self, seed: int, train: bool = False, draw: ScenarioDraw | None = None,
              anomalies: Sequence[AnomalySpec] | None = None) -> SimState:
        state = init_episode(self.route, self.demand, self.sim_cfg, seed)
        if draw is None:
            draw = sample_episode_scenario(state.rng_scenario, self.scenario_cfg, train)
        state.demand_scale = draw.demand_scale
        state.speed_scale = draw.speed_scale

        specs = self.scenario_cfg.anomalies if anomalies is None else tuple(anomalies)
        resolved = [apply_anomaly(state, spec) for spec in specs]

        self._state = state
        self._log = EpisodeLog(
            route_name=self.route.name,
            seed=seed,
            draw=draw,
            anomalies=resolved,
            trajectory=TrajectoryLog(capacity=self.sim_cfg.capacity, route_length=self.route.route_length),
        )
        self._next_cv2 = self.env_cfg.cv2_interval
        self._next_trajectory = self.env_cfg.trajectory_interval
        logger.debug("Reset %s seed=%d p_d=%.3f p_s=%.3f", self.route.name, seed, draw.demand_scale, draw.speed_scale)
        return state

    def step(self) -> list[int]:
        """Advance one tick; returns ids of buses that reached a decision point, front first."""
        state = self.state
        events: list[SimEvent] = []
        advance(state, events)
        self._sample(state)

        if state.done:
            self.log.finalize(state)

        return [
            e.bus_id for e in events
            if e.kind == EventKind.ARRIVED and state.bus(e.bus_id).decision_pending
        ]

    def observe(self, bus_id: int) -> Observation:
        return observe(self.state, bus_id)

    def act(self, bus_id: int, obs: Observation, a: float) -> DecisionRecord:
        """Hold `bus_id` for `a * max_hold` seconds and log the decision."""
        if not 0 <= a <= 1:
            raise ValueError(f"Action {a} outside [0, 1]")
        state = self.state
        apply_holding(state, bus_id, a * self.env_cfg.max_hold, self.env_cfg.max_hold)
        record = DecisionRecord(bus_id, state.bus(bus_id).next_stop, state.clock, obs, a)
        self.log.decisions.append(record)
        return record

    def reward(self, a: float) -> RewardRecord:
        record = compute_reward(self.state, a, self.env_cfg.reward_weight)
        self.log.rewards.append(record.r)
        return record

    def event_graph(self, ego: DecisionRecord) -> EventGraph:
        return collect_events(self.log.decisions, ego, self.state.clock,
                              self.route.n_stops, self.route.dispatch_headway_mean)

    def _sample(self, state: SimState) -> None:
        now = state.clock
        while now >= self._next_cv2:
            self.log.cv2_samples.append((self._next_cv2, fleet_cv2(state)))
            self._next_cv2 += self.env_cfg.cv2_interval
        if self.env_cfg.record_trajectory and now >= self._next_trajectory:
            self.log.trajectory.record(state)
            while self._next_trajectory <= now:
                self._next_trajectory += self.env_cfg.trajectory_interval
