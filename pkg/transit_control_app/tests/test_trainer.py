#!/usr/bin/env python3.12
"""
test_trainer

Module created to test training, paired evaluation, sweeps and run
manifests.

Author: transit-control maintainers

Date: 17.10.2026
"""

import json
import math
import os

import numpy as np
import pandas as pd
import pytest

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.actor_critic import QuantileActorCriticAgent, meta_weight_snapshot
from transit_control_app.src.agents.factory import AgentFactory
from transit_control_app.src.agents.spec import AgentSpec
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.config.base import fixture_path
from transit_control_app.src.config.manager import RunConfig, load_run_config
from transit_control_app.src.env.replay import ReplayMemory
from transit_control_app.src.errors import ConfigError, DivergenceError
from transit_control_app.src.scenario.spec import AnomalyKind, AnomalySpec
from transit_control_app.src.trainer.episode import run_episode
from transit_control_app.src.trainer.evaluate import EvalCell, evaluate, evaluation_grid
from transit_control_app.src.trainer.manifest import blob_hash, write_run_manifest
from transit_control_app.src.trainer.sweep import sweep
from transit_control_app.src.trainer.train import (
    SNAPSHOT_GRAPHS,
    SeedStreams,
    _snapshot,
    agent_spec_for,
    load_agent,
    make_env,
    train,
)

SMALL_AGENT = {
    "agent.n_quantiles": 4,
    "agent.n_target_quantiles": 4,
    "agent.hidden": [8, 8],
    "agent.n_cos": 8,
    "agent.attention_dim": 4,
}


def _desk(**overrides: object) -> RunConfig:
    return load_run_config(fixture_path("desk_route.json"), overrides={**SMALL_AGENT, **overrides})


def _flat(sets: dict) -> dict[str, np.ndarray]:
    return {name: params.flat().copy() for name, params in sets.items()}

#### training ####

def test_infinite_threshold_is_pure_rollout() -> None:
    run = _desk(**{"trainer.buffer_threshold": "inf", "trainer.episodes": 2})
    result = train(run)

    fresh = AgentFactory.create_agent(agent_spec_for(run), run.route, SeedStreams.from_seed(0).init)
    trained, initial = _flat(result.agent.parameter_sets()), _flat(fresh.parameter_sets())
    assert trained.keys() == initial.keys()
    for name in trained:
        assert np.array_equal(trained[name], initial[name])
    assert result.curves["critic_loss"].isna().all()
    assert len(result.memory) > 0

def test_training_is_reproducible() -> None:
    run = _desk(**{"trainer.buffer_threshold": 16, "trainer.batch_size": 8, "trainer.episodes": 2})
    first, second = train(run), train(run)

    a, b = _flat(first.agent.parameter_sets()), _flat(second.agent.parameter_sets())
    for name in a:
        assert np.array_equal(a[name], b[name])
    pd.testing.assert_frame_equal(first.curves, second.curves)
    assert first.curves["critic_loss"].notna().all()

def test_training_writes_outputs(tmp_path) -> None:
    run = _desk(**{"trainer.buffer_threshold": 16, "trainer.batch_size": 8, "trainer.episodes": 2})
    out = str(tmp_path / "train")
    result = train(run, out, seed=5)

    for name in (config.checkpoint_name, config.curves_name, config.manifest_name, "meta_weights_1.json"):
        assert os.path.exists(os.path.join(out, name))
    with open(os.path.join(out, config.manifest_name)) as file:
        manifest = json.load(file)
    assert manifest["config"]["trainer"]["seed"] == 5
    assert "desk_route.json" in manifest["fixtures"]

    loaded = load_agent(result.checkpoint, run.route)
    states = np.random.default_rng(0).uniform(size=(6, 4))
    assert np.array_equal(loaded.policy(states), result.agent.policy(states))

def test_rule_agents_do_not_train() -> None:
    run = _desk(**{"agent.variant": "fh"})
    with pytest.raises(ConfigError):
        train(run)

def test_divergence_aborts() -> None:
    run = _desk(**{"trainer.buffer_threshold": 8, "trainer.batch_size": 8, "trainer.episodes": 2,
                   "trainer.divergence_limit": 1e-12})
    with pytest.raises(DivergenceError):
        train(run)

def test_training_rollout_needs_generator(desk_run: RunConfig) -> None:
    agent = AgentFactory.create_agent(AgentSpec(AgentVariant.NC), desk_run.route, np.random.default_rng(0))
    with pytest.raises(ValueError):
        run_episode(agent, make_env(desk_run), seed=0, train=True)

def test_snapshot_pools_per_bus_meta_weights(desk_run: RunConfig) -> None:
    spec = AgentSpec(AgentVariant.IQNC_M, n_quantiles=4, n_target_quantiles=4, hidden=(8, 8), n_cos=8,
                     attention_dim=4, shared_parameters=False)
    agent = AgentFactory.create_agent(spec, desk_run.route, np.random.default_rng(1))
    assert isinstance(agent, QuantileActorCriticAgent)
    memory = ReplayMemory(threshold=0)
    rollout = AgentFactory.create_agent(AgentSpec(AgentVariant.NC), desk_run.route, np.random.default_rng(0))
    run_episode(rollout, make_env(desk_run), seed=2, memory=memory)
    assert len(memory) <= SNAPSHOT_GRAPHS

    totals: dict[int, np.ndarray] = {}
    counts: dict[int, int] = {}
    for bus_id, buffer in memory.buffers.items():
        graphs = [exp.g for exp in buffer]
        for n, weights in meta_weight_snapshot(agent, graphs, bus_id=bus_id).items():
            k = sum(1 for g in graphs if g.n_events == n)
            totals[n] = totals.get(n, 0.0) + k * np.asarray(weights)
            counts[n] = counts.get(n, 0) + k

    snapshot = _snapshot(agent, memory)

    assert sorted(snapshot) == sorted(totals)
    for n, weights in snapshot.items():
        assert weights == pytest.approx((totals[n] / counts[n]).tolist())
        assert np.mean(weights) == pytest.approx(1.0)

#### evaluation ####

def test_evaluation_grid_has_no_duplicates() -> None:
    cells = evaluation_grid((0.1, 0.2), (1.0, 2.0), fixed_sigma_d=1.0, fixed_sigma_s=0.1)

    assert [(c.sigma_d, c.sigma_s) for c in cells] == [(1.0, 0.1), (1.0, 0.2), (2.0, 0.1)]

def test_cell_slug() -> None:
    surge = AnomalySpec(AnomalyKind.DEMAND_SURGE, (0.0, 60.0), (1,), extra_pax=2)

    assert EvalCell(1.0, 0.1).slug == "sd1_ss0.1"
    assert EvalCell(3.0, 0.3, (surge,)).slug == "sd3_ss0.3_demand-surge"

def test_no_control_against_itself(desk_run: RunConfig, tmp_path) -> None:
    agent = AgentFactory.create_agent(AgentSpec(AgentVariant.NC), desk_run.route, np.random.default_rng(0))
    out = str(tmp_path / "eval")
    (result,) = evaluate(agent, desk_run, [EvalCell(0.0, 0.1)], n_seeds=2, seed=1, out_dir=out)

    report = result.report
    assert report.aht_s == 0.0
    assert (report.d_awt_s, report.d_att_s, report.d_aod) == (0.0, 0.0, 0.0)
    assert report.seed_count == 2
    assert os.path.exists(os.path.join(out, "nc", "sd0_ss0.1", config.trajectory_name))
    assert os.path.exists(os.path.join(out, "nc", "sd0_ss0.1", config.experiences_name))

def test_evaluation_keeps_cell_order(desk_run: RunConfig) -> None:
    agent = AgentFactory.create_agent(AgentSpec(AgentVariant.FH), desk_run.route, np.random.default_rng(0))
    cells = [EvalCell(0.0, 0.3), EvalCell(2.0, 0.0)]
    results = evaluate(agent, desk_run, cells, n_seeds=1, workers=2)

    assert [r.cell for r in results] == cells
    assert all(r.report.agent == "fh" for r in results)

def test_recovery_pairs(desk_run: RunConfig) -> None:
    agent = AgentFactory.create_agent(AgentSpec(AgentVariant.FH), desk_run.route, np.random.default_rng(0))
    interruption = AnomalySpec(AnomalyKind.INTERRUPTION, (600.0, 900.0), (1,), factor=0.3)
    (result,) = evaluate(agent, desk_run, [EvalCell(0.0, 0.1, (interruption,))], n_seeds=2)

    assert result.report.anomaly == "interruption"
    assert len(result.recovery_times((600.0, 900.0))) == 2

def test_evaluation_needs_seeds(desk_run: RunConfig) -> None:
    agent = AgentFactory.create_agent(AgentSpec(AgentVariant.NC), desk_run.route, np.random.default_rng(0))
    with pytest.raises(ValueError):
        evaluate(agent, desk_run, [EvalCell(1.0, 0.1)], n_seeds=0)

#### sweeps ####

def test_sweep_of_rule_agents(tmp_path) -> None:
    path = fixture_path("desk_sweep.yaml")
    run = load_run_config(path, overrides={"sweep.agents": ["nc", "fh"]})
    out = str(tmp_path / "sweep")
    reports = sweep(run, out, base_dir=os.path.dirname(path), n_seeds=1)

    # two speed cells plus one extra demand cell, for each agent
    assert len(reports) == 6
    assert {r.agent for r in reports} == {"nc", "fh"}
    frame = pd.read_csv(os.path.join(out, config.report_name))
    assert len(frame) == 6

def test_sweep_needs_section() -> None:
    with pytest.raises(ConfigError):
        sweep(_desk(), "unused")

#### manifests ####

def test_blob_hash_matches_git() -> None:
    assert blob_hash(b"") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391"
    assert blob_hash(b"hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a"

def test_manifest_records_fixtures(tmp_path) -> None:
    out = str(tmp_path / "manifest.json")
    manifest = write_run_manifest({"threshold": math.inf}, [fixture_path("desk_route.json")], out)

    with open(fixture_path("desk_route.json"), "rb") as file:
        expected = blob_hash(file.read())
    assert manifest["fixtures"]["desk_route.json"]["blob"] == expected
    assert os.path.exists(out)
