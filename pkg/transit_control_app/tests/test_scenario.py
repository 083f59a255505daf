#!/usr/bin/env python3.12
"""
test_scenario

Module created to test perturbation draws and anomaly injection.

Author: transit-control maintainers

Date: 17.10.2026
"""

import numpy as np
import pytest

import transit_control_app.src.config.base as config
from transit_control_app.src.errors import ScenarioError
from transit_control_app.src.scenario.anomaly import apply_anomaly, apply_demand_surge, apply_interruption, pick_targets
from transit_control_app.src.scenario.perturbation import (
    sample_demand_scale,
    sample_episode_scenario,
    sample_speed_scale,
)
from transit_control_app.src.scenario.spec import AnomalyKind, AnomalySpec, PerturbationSpec, ScenarioConfig
from transit_control_app.src.sim.simulator import advance, board_alight, init_episode
from transit_control_app.src.sim.state import SimState

#### perturbations ####

def test_zero_sigma_keeps_nominal_scale() -> None:
    rng = np.random.default_rng(0)

    assert sample_demand_scale(rng, 0.0) == 1.0
    assert sample_speed_scale(rng, 0.0) == 1.0

def test_scales_are_clamped() -> None:
    rng = np.random.default_rng(1)
    demand = [sample_demand_scale(rng, 5.0) for _ in range(200)]
    speed = [sample_speed_scale(rng, 5.0) for _ in range(200)]

    assert min(demand) == 0.0
    assert min(speed) == config.min_speed_scale

def test_negative_sigma() -> None:
    with pytest.raises(ValueError):
        sample_demand_scale(np.random.default_rng(0), -0.1)
    with pytest.raises(ScenarioError):
        PerturbationSpec(sigma_d=-1.0)

def test_training_draws_resample_sigmas() -> None:
    cfg = ScenarioConfig(PerturbationSpec(1.0, 0.1, resample_per_episode=True))
    rng = np.random.default_rng(2)
    draws = [sample_episode_scenario(rng, cfg, train=True) for _ in range(50)]

    assert all(0.0 <= d.sigma_d <= 3.0 and 0.0 <= d.sigma_s <= 0.3 for d in draws)
    assert len({d.sigma_d for d in draws}) == 50

def test_evaluation_draws_keep_sigmas() -> None:
    cfg = ScenarioConfig(PerturbationSpec(2.0, 0.2, resample_per_episode=True))
    draw = sample_episode_scenario(np.random.default_rng(3), cfg, train=False)

    assert (draw.sigma_d, draw.sigma_s) == (2.0, 0.2)

#### anomaly specs ####

def test_anomaly_from_dict() -> None:
    spec = AnomalySpec.from_dict({"kind": "interruption", "window": [600, 1800], "targets": [1, 2], "factor": 0.5})

    assert spec.kind == AnomalyKind.INTERRUPTION
    assert spec.window == (600.0, 1800.0)
    assert spec.targets == (1, 2)
    assert not spec.needs_targets

def test_anomaly_window_defaults_to_horizon() -> None:
    spec = AnomalySpec.from_dict({"kind": "demand-surge", "start": 100, "extra_pax": 3, "n_random": 2})

    assert spec.window == (100.0, config.horizon)
    assert spec.needs_targets

@pytest.mark.parametrize("data", [
    {"kind": "flood", "window": [0, 10]},
    {"kind": "interruption", "window": [0, 10], "factor": 1.5},
    {"kind": "interruption", "window": [10, 10]},
    {"kind": "demand-surge", "window": [0, 10], "extra_pax": -1},
])
def test_anomaly_rejects_bad_values(data: dict) -> None:
    with pytest.raises(ScenarioError):
        AnomalySpec.from_dict(data)

#### injection ####

def test_random_surge_targets_skip_terminal() -> None:
    spec = AnomalySpec(AnomalyKind.DEMAND_SURGE, (0.0, 60.0), extra_pax=1, n_random=4)
    resolved = pick_targets(np.random.default_rng(0), spec, n_buses=3, n_stops=5)

    assert resolved.targets == (0, 1, 2, 3)

def test_random_targets_beyond_pool() -> None:
    spec = AnomalySpec(AnomalyKind.INTERRUPTION, (0.0, 60.0), factor=0.5, n_random=4)
    with pytest.raises(ScenarioError):
        pick_targets(np.random.default_rng(0), spec, n_buses=3, n_stops=5)

def test_interruption_validation(empty_state: SimState) -> None:
    with pytest.raises(ScenarioError):
        apply_interruption(empty_state, AnomalySpec(AnomalyKind.INTERRUPTION, (0.0, 60.0), (7,), factor=0.5))
    with pytest.raises(ScenarioError):
        apply_interruption(empty_state, AnomalySpec(AnomalyKind.INTERRUPTION, (0.0, 7200.0), (0,), factor=0.5))
    with pytest.raises(ScenarioError):
        apply_interruption(empty_state, AnomalySpec(AnomalyKind.DEMAND_SURGE, (0.0, 60.0), (0,), extra_pax=1))

def test_interruption_slows_targeted_bus(empty_state: SimState) -> None:
    reference = init_episode(empty_state.route, empty_state.demand, empty_state.cfg, seed=empty_state.seed)
    apply_interruption(empty_state, AnomalySpec(AnomalyKind.INTERRUPTION, (0.0, 3600.0), (0,), factor=0.5))

    for _ in range(60):
        advance(empty_state, [])
        advance(reference, [])

    assert 0.0 < empty_state.bus(0).position < reference.bus(0).position

def test_surge_adds_riders_on_arrival(empty_state: SimState) -> None:
    apply_demand_surge(empty_state, AnomalySpec(AnomalyKind.DEMAND_SURGE, (0.0, 3600.0), (1,), extra_pax=7))
    empty_state.clock = 10.0

    n_alight, n_board, left_behind = board_alight(empty_state, 0, 1)

    assert (n_alight, n_board, left_behind) == (0, 2, 5)
    assert empty_state.ledger.spawned == 7
    assert all(p.destination == 2 for p in empty_state.stops[1].queue)

def test_surge_outside_window_is_silent(empty_state: SimState) -> None:
    apply_demand_surge(empty_state, AnomalySpec(AnomalyKind.DEMAND_SURGE, (100.0, 200.0), (1,), extra_pax=7))
    empty_state.clock = 200.0

    assert board_alight(empty_state, 0, 1) == (0, 0, 0)

def test_apply_anomaly_resolves_targets(empty_state: SimState) -> None:
    spec = AnomalySpec(AnomalyKind.INTERRUPTION, (0.0, 60.0), factor=0.5, n_random=2)
    resolved = apply_anomaly(empty_state, spec)

    assert len(resolved.targets) == 2
    assert empty_state.interruptions[0].bus_ids == frozenset(resolved.targets)
