#!/usr/bin/env python3.12
"""
manager

Turns run documents into typed configuration objects.

Author: transit-control maintainers

Date: 17.10.2026
"""

import copy
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.spec import AgentSpec
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.config.validator import ConfigValidator
from transit_control_app.src.env.config import EnvConfig
from transit_control_app.src.errors import ConfigError
from transit_control_app.src.scenario.spec import AnomalySpec, PerturbationSpec, ScenarioConfig
from transit_control_app.src.sim.config import DemandMatrix, RouteSpec, SimConfig, synthetic_demand
from transit_control_app.src.trainer.config import TrainerConfig
from transit_control_app.src.types import ConfigDict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepConfig:
    """Agents and scenario grid of a batch comparison."""
    agents: tuple[AgentVariant, ...]
    sigma_s_grid: tuple[float, ...] = config.eval_sigma_s_grid
    sigma_d_grid: tuple[float, ...] = config.eval_sigma_d_grid
    fixed_sigma_d: float = config.fixed_sigma_d
    fixed_sigma_s: float = config.fixed_sigma_s
    checkpoints: Dict[str, str] = field(default_factory=dict)
    routes: tuple[str, ...] = ()


@dataclass(frozen=True)
class RunConfig:
    route: RouteSpec
    demand: DemandMatrix
    sim: SimConfig
    scenario: ScenarioConfig
    env: EnvConfig
    trainer: TrainerConfig
    agent: Optional[AgentSpec] = None
    sweep: Optional[SweepConfig] = None
    document: ConfigDict = field(default_factory=dict, repr=False, compare=False)
    sources: tuple[str, ...] = ()


def apply_overrides(document: ConfigDict, overrides: Mapping[str, Any]) -> ConfigDict:
    """Copy of `document` with dotted keys such as 'trainer.seed' replaced; None values are skipped."""
    merged = copy.deepcopy(document)
    for dotted, value in overrides.items():
        if value is None:
            continue
        node = merged
        *parents, leaf = dotted.split(".")
        for key in parents:
            node = node.setdefault(key, {})
            if not isinstance(node, dict):
                raise ConfigError(f"Cannot override '{dotted}': '{key}' is not a section")
        node[leaf] = value
    return merged


class ConfigManager:
    """Builds a RunConfig from a validated document."""

    def __init__(self, document: ConfigDict, source: Optional[str] = None) -> None:
        self.document = document
        self.source = source

    def build(self, overrides: Optional[Mapping[str, Any]] = None, require_agent: bool = False) -> RunConfig:
        document = apply_overrides(self.document, overrides or {})

        validator = ConfigValidator(require_agent=require_agent)
        is_valid, errors = validator.validate(document)
        if not is_valid:
            raise ConfigError(errors)

        route = self._route(document["route"])
        agent = self._agent(document.get("agent"))
        return RunConfig(
            route=route,
            demand=self._demand(document["demand"], route),
            sim=self._sim(document.get("sim", {})),
            scenario=self._scenario(document.get("scenario", {})),
            env=self._env(document.get("env", {})),
            trainer=self._trainer(document.get("trainer", {})),
            agent=agent,
            sweep=self._sweep(document.get("sweep")),
            document=document,
            sources=(self.source,) if self.source else (),
        )

    def _route(self, route: ConfigDict) -> RouteSpec:
        stops = tuple(float(s) for s in route["stops_km"])
        return RouteSpec(
            stop_positions=stops,
            n_services=int(route["services"]),
            dispatch_headway_mean=float(route["headway_mean_s"]),
            dispatch_headway_std=float(route["headway_std_s"]),
            route_length=float(route.get("length_km", stops[-1])),
            name=str(route.get("name", "route")),
        )

    def _demand(self, demand: ConfigDict, route: RouteSpec) -> DemandMatrix:
        if "synthetic" in demand:
            synthetic = demand["synthetic"]
            return synthetic_demand(
                route,
                float(synthetic["total_pax_per_hour"]),
                decay_km=float(synthetic.get("decay_km", 5.0)),
                seed=int(synthetic.get("seed", 0)),
            )
        return DemandMatrix(demand["rates_pax_per_hour"])

    def _sim(self, sim: ConfigDict) -> SimConfig:
        noise = sim.get("speed_noise", config.speed_noise)
        return SimConfig(
            alight_time_per_pax=float(sim.get("t_a", config.alight_time_per_pax)),
            board_time_per_pax=float(sim.get("t_b", config.board_time_per_pax)),
            nominal_speed=float(sim.get("v_kmh", config.nominal_speed)),
            speed_noise_lo=float(noise[0]),
            speed_noise_hi=float(noise[1]),
            capacity=int(sim.get("capacity", config.capacity)),
            tick=float(sim.get("tick_s", config.tick)),
            horizon=float(sim.get("horizon_s", config.horizon)),
        )

    def _scenario(self, scenario: ConfigDict) -> ScenarioConfig:
        perturbation = PerturbationSpec(
            sigma_d=float(scenario.get("sigma_d", 0.0)),
            sigma_s=float(scenario.get("sigma_s", 0.0)),
            resample_per_episode=bool(scenario.get("resample_per_episode", True)),
        )
        return ScenarioConfig(
            perturbation=perturbation,
            anomalies=tuple(AnomalySpec.from_dict(a) for a in scenario.get("anomalies", [])),
            train_sigma_d_range=tuple(scenario.get("train_sigma_d_range", config.train_sigma_d_range)),  # type: ignore[arg-type]
            train_sigma_s_range=tuple(scenario.get("train_sigma_s_range", config.train_sigma_s_range)),  # type: ignore[arg-type]
        )

    def _env(self, env: ConfigDict) -> EnvConfig:
        return EnvConfig(
            max_hold=float(env.get("max_hold_s", config.max_hold)),
            reward_weight=float(env.get("reward_weight", config.reward_weight)),
            cv2_interval=float(env.get("cv2_interval_s", config.cv2_interval)),
            trajectory_interval=float(env.get("trajectory_interval_s", config.trajectory_interval)),
            record_trajectory=bool(env.get("record_trajectory", True)),
        )

    def _trainer(self, trainer: ConfigDict) -> TrainerConfig:
        threshold = trainer.get("buffer_threshold", config.buffer_threshold)
        return TrainerConfig(
            episodes=int(trainer.get("episodes", config.episodes)),
            buffer_threshold=math.inf if threshold == "inf" else float(threshold),
            batch_size=int(trainer.get("batch_size", config.batch_size)),
            buffer_capacity=int(trainer.get("buffer_capacity", config.buffer_capacity)),
            updates_per_episode=int(trainer.get("updates_per_episode", config.updates_per_episode)),
            divergence_limit=float(trainer.get("divergence_limit", config.divergence_limit)),
            eval_seeds=int(trainer.get("eval_seeds", config.eval_seeds)),
            seed=int(trainer.get("seed", 0)),
        )

    def _agent(self, agent: Optional[ConfigDict]) -> Optional[AgentSpec]:
        if agent is None:
            return None
        return AgentSpec.from_dict(agent)

    def _sweep(self, sweep: Optional[ConfigDict]) -> Optional[SweepConfig]:
        if sweep is None:
            return None
        return SweepConfig(
            agents=tuple(AgentVariant(str(v).lower()) for v in sweep["agents"]),
            sigma_s_grid=tuple(float(v) for v in sweep.get("sigma_s_grid", config.eval_sigma_s_grid)),
            sigma_d_grid=tuple(float(v) for v in sweep.get("sigma_d_grid", config.eval_sigma_d_grid)),
            fixed_sigma_d=float(sweep.get("fixed_sigma_d", config.fixed_sigma_d)),
            fixed_sigma_s=float(sweep.get("fixed_sigma_s", config.fixed_sigma_s)),
            checkpoints={str(k).lower(): str(v) for k, v in sweep.get("checkpoints", {}).items()},
            routes=tuple(sweep.get("routes", [])),
        )


def load_run_config(path: str, overrides: Optional[Mapping[str, Any]] = None,
                    require_agent: bool = False) -> RunConfig:
    """Read, validate and build the run document at `path`."""
    document = config.load_document(path)
    run = ConfigManager(document, source=path).build(overrides, require_agent=require_agent)
    logger.debug("Loaded run config from %s: route %s, %d stops", path, run.route.name, run.route.n_stops)
    return run


def sweep_routes(run: RunConfig, base_dir: str) -> List[RunConfig]:
    """The run's own route followed by every transfer route listed in its sweep section."""
    runs = [run]
    if run.sweep is None:
        return runs
    for route_path in run.sweep.routes:
        path = route_path if os.path.isabs(route_path) else os.path.join(base_dir, route_path)
        document = config.load_document(path)
        merged = {**{k: v for k, v in run.document.items() if k not in ("route", "demand")}, **document}
        runs.append(ConfigManager(merged, source=path).build())
    return runs
