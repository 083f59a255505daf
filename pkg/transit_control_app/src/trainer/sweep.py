#!/usr/bin/env python3.12
"""
sweep

Batch comparison of several policies over the scenario grid, on the
training route and on any transfer routes.

Author: transit-control maintainers

Date: 17.10.2026
"""

import dataclasses
import logging
import os

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.base import Agent
from transit_control_app.src.agents.factory import AgentFactory
from transit_control_app.src.agents.spec import AgentSpec
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.config.manager import RunConfig, sweep_routes
from transit_control_app.src.errors import ConfigError
from transit_control_app.src.metrics.report import MetricsReport, write_report_csv
from transit_control_app.src.trainer.evaluate import evaluate, evaluation_grid
from transit_control_app.src.trainer.manifest import write_run_manifest
from transit_control_app.src.trainer.train import load_agent, train

logger = logging.getLogger(__name__)


def _agent_for(variant: AgentVariant, run: RunConfig, base_dir: str, out_dir: str) -> Agent:
    """Rule agents are built directly; learned ones come from a listed checkpoint or are trained here."""
    if not variant.learns:
        return AgentFactory.create_agent(AgentSpec(variant, max_hold=run.env.max_hold), run.route,
                                         np.random.default_rng(run.trainer.seed))

    checkpoint = run.sweep.checkpoints.get(variant.value) if run.sweep else None
    if checkpoint is not None:
        path = checkpoint if os.path.isabs(checkpoint) else os.path.join(base_dir, checkpoint)
        return load_agent(path, run.route, max_hold=run.env.max_hold)

    spec = run.agent.replace(variant=variant, beta=None) if run.agent else AgentSpec(variant)
    logger.info("No checkpoint for %s, training it on %s", variant, run.route.name)
    trained = train(dataclasses.replace(run, agent=spec), os.path.join(out_dir, "train", variant.value))
    return trained.agent


def sweep(run: RunConfig, out_dir: str, base_dir: str = ".", n_seeds: int | None = None) -> list[MetricsReport]:
    """Evaluate every agent of the sweep section on every grid cell and route; writes report.csv."""
    if run.sweep is None:
        raise ConfigError("Run document has no 'sweep' section")
    os.makedirs(out_dir, exist_ok=True)

    cells = evaluation_grid(run.sweep.sigma_s_grid, run.sweep.sigma_d_grid,
                            run.sweep.fixed_sigma_d, run.sweep.fixed_sigma_s, run.scenario.anomalies)
    seeds = n_seeds or run.trainer.eval_seeds
    agents = {variant: _agent_for(variant, run, base_dir, out_dir) for variant in run.sweep.agents}

    reports: list[MetricsReport] = []
    sources: list[str] = []
    for route_run in sweep_routes(run, base_dir):
        sources.extend(route_run.sources)
        for variant, agent in agents.items():
            if agent.learns and route_run.route.n_services != run.route.n_services and not agent.spec.shared_parameters:
                raise ConfigError(f"{variant} with independent parameters cannot transfer to {route_run.route.name}")
            results = evaluate(agent, route_run, cells, seeds, seed=run.trainer.seed)
            reports.extend(result.report for result in results)

    write_report_csv(reports, os.path.join(out_dir, config.report_name))
    write_run_manifest({"document": run.document, "cells": len(cells), "seeds": seeds}, sources,
                       os.path.join(out_dir, config.manifest_name))
    logger.info("Sweep wrote %d rows to %s", len(reports), out_dir)
    return reports
