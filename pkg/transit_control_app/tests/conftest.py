#!/usr/bin/env python3.12
"""
conftest

Shared fixtures: the desk route run, small hand-built routes and states.

Author: transit-control maintainers

Date: 17.10.2026
"""

import numpy as np
import pytest

from transit_control_app.src.config.base import fixture_path
from transit_control_app.src.config.manager import RunConfig, load_run_config
from transit_control_app.src.env.environment import TransitEnv
from transit_control_app.src.sim.config import DemandMatrix, RouteSpec, SimConfig
from transit_control_app.src.sim.simulator import init_episode
from transit_control_app.src.sim.state import SimState
from transit_control_app.src.trainer.train import make_env


@pytest.fixture()
def desk_run() -> RunConfig:
    return load_run_config(fixture_path("desk_route.json"))


@pytest.fixture()
def desk_env(desk_run: RunConfig) -> TransitEnv:
    return make_env(desk_run, record_trajectory=True)


@pytest.fixture()
def line_route() -> RouteSpec:
    # three stops one kilometre apart, regular dispatch
    return RouteSpec(stop_positions=(0.0, 1.0, 2.0), n_services=3, dispatch_headway_mean=300.0,
                     dispatch_headway_std=0.0, route_length=2.0, name="line")


@pytest.fixture()
def empty_state(line_route: RouteSpec) -> SimState:
    demand = DemandMatrix(np.zeros((line_route.n_stops, line_route.n_stops)))
    return init_episode(line_route, demand, SimConfig(capacity=2, horizon=3600.0), seed=0)
