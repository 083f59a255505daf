#!/usr/bin/env python3.12
"""
test_config

Module created to test run document validation, overrides and loading.

Author: transit-control maintainers

Date: 17.10.2026
"""

import copy
import math
import os

import pytest

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.config.base import fixture_path, load_document
from transit_control_app.src.config.manager import ConfigManager, apply_overrides, load_run_config, sweep_routes
from transit_control_app.src.config.validator import ConfigValidator
from transit_control_app.src.errors import ConfigError


@pytest.fixture()
def document() -> dict:
    return load_document(fixture_path("desk_route.json"))

#### validation ####

def test_desk_document_is_valid(document: dict) -> None:
    is_valid, errors = ConfigValidator(require_agent=True).validate(document)

    assert is_valid
    assert errors == []

def test_validator_collects_every_error(document: dict) -> None:
    broken = copy.deepcopy(document)
    broken["extras"] = {}
    broken["env"]["reward_weight"] = 1.5
    broken["trainer"]["buffer_threshold"] = -1

    is_valid, errors = ConfigValidator().validate(broken)

    assert not is_valid
    assert len(errors) == 3
    assert any("extras" in e for e in errors)

def test_missing_route(document: dict) -> None:
    del document["route"]

    is_valid, errors = ConfigValidator().validate(document)

    assert not is_valid
    assert "Document is missing required section 'route'" in errors

def test_backward_demand_is_rejected(document: dict) -> None:
    rates = [[0.0] * 10 for _ in range(10)]
    rates[3][1] = 5.0
    document["demand"] = {"rates_pax_per_hour": rates}

    with pytest.raises(ConfigError) as error:
        ConfigManager(document).build()
    assert "[3][1]" in str(error.value)

def test_agent_section_can_be_required(document: dict) -> None:
    del document["agent"]

    assert ConfigManager(document).build().agent is None
    with pytest.raises(ConfigError):
        ConfigManager(document).build(require_agent=True)

#### overrides ####

def test_overrides_replace_dotted_keys(document: dict) -> None:
    merged = apply_overrides(document, {"trainer.seed": 9, "agent.hidden": [4, 4], "trainer.episodes": None})

    assert merged["trainer"]["seed"] == 9
    assert merged["trainer"]["episodes"] == document["trainer"]["episodes"]
    assert merged["agent"]["hidden"] == [4, 4]
    assert document["trainer"]["seed"] == 0

def test_override_through_a_value_fails(document: dict) -> None:
    with pytest.raises(ConfigError):
        apply_overrides(document, {"trainer.seed.value": 1})

def test_infinite_threshold_override() -> None:
    run = load_run_config(fixture_path("desk_route.json"), overrides={"trainer.buffer_threshold": "inf"})

    assert math.isinf(run.trainer.buffer_threshold)

#### loading ####

def test_load_desk_route() -> None:
    run = load_run_config(fixture_path("desk_route.json"))

    assert run.route.name == "desk"
    assert run.route.n_stops == 10
    assert run.route.n_services == 4
    assert run.env.max_hold == 180.0
    assert run.agent is not None and run.agent.variant == AgentVariant.IQNC_M
    assert run.sim.capacity == config.capacity
    assert run.sources == (fixture_path("desk_route.json"),)

def test_load_yaml_sweep() -> None:
    run = load_run_config(fixture_path("desk_sweep.yaml"))

    assert run.sweep is not None
    assert run.sweep.agents == (AgentVariant.NC, AgentVariant.FH, AgentVariant.IQNC_N)
    assert run.sweep.sigma_s_grid == (0.1, 0.3)

def test_missing_document(tmp_path) -> None:
    with pytest.raises(ConfigError):
        load_document(str(tmp_path / "absent.json"))

def test_document_must_be_mapping(tmp_path) -> None:
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")

    with pytest.raises(ConfigError):
        load_document(str(path))

def test_sweep_routes_merge_transfer_routes() -> None:
    path = fixture_path("desk_sweep.yaml")
    run = load_run_config(path, overrides={"sweep.routes": ["r1.json"]})

    runs = sweep_routes(run, os.path.dirname(path))

    assert [r.route.name for r in runs] == ["desk", "R1"]
    assert runs[1].route.n_services == 59
    assert runs[1].route.n_stops == 46
