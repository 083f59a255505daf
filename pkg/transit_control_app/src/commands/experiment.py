#!/usr/bin/env python3.12
"""
experiment

Train, eval and sweep command handlers.

Author: transit-control maintainers

Date: 17.10.2026
"""

import logging
import os
from typing import Any, Callable, Sequence

import numpy as np
import pandas as pd

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.base import Agent
from transit_control_app.src.agents.factory import AgentFactory
from transit_control_app.src.agents.spec import AgentSpec
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.commands.base import BaseCommand
from transit_control_app.src.config.manager import RunConfig, load_run_config
from transit_control_app.src.errors import ConfigError
from transit_control_app.src.metrics.report import write_report_csv
from transit_control_app.src.scenario.spec import AnomalySpec
from transit_control_app.src.trainer.evaluate import EvalCell, EvalResult, evaluate
from transit_control_app.src.trainer.manifest import write_run_manifest
from transit_control_app.src.trainer.sweep import sweep as run_sweep
from transit_control_app.src.trainer.train import load_agent
from transit_control_app.src.trainer.train import train as train_agent

logger = logging.getLogger(__name__)

RECOVERY_NAME = "recovery.csv"


class ExperimentCommands(BaseCommand):
    """Handles training and evaluation commands."""

    def train(self, config_path: str, seed: int | None, out: str, episodes: int | None,
              overrides: Sequence[tuple[str, Any]]) -> None:
        """Train the agent of a run document and write its checkpoint."""
        values = self.overrides(overrides, **{"trainer.seed": seed, "trainer.episodes": episodes})
        run = load_run_config(config_path, values, require_agent=True)
        result = train_agent(run, self.prepare_dir(out))

        last = result.curves.iloc[-1]
        print(f"Checkpoint: {result.checkpoint}")
        print(f"Episodes: {int(last['episode'])}, last mean reward {last['mean_reward']:.4f}, "
              f"last critic loss {last['critic_loss']:.4g}")

    def _eval_agent(self, run: RunConfig, checkpoint: str | None, variant: str | None, seed: int) -> Agent:
        if checkpoint is not None:
            agent = load_agent(checkpoint, run.route, max_hold=run.env.max_hold)
            if variant is not None and variant != agent.spec.variant.value:
                raise ConfigError(f"Checkpoint holds a {agent.spec.variant} agent, not {variant}")
            return agent

        chosen = AgentVariant(variant or AgentVariant.NC.value)
        if chosen.learns:
            raise ConfigError(f"Agent '{chosen}' needs --checkpoint")
        return AgentFactory.create_agent(AgentSpec(chosen, max_hold=run.env.max_hold), run.route,
                                         np.random.default_rng(seed))

    def _write_recovery(self, result: EvalResult, path: str) -> None:
        window = result.cell.anomalies[0].window
        rows = [
            {"seed_index": i, "treated_s": treated, "baseline_s": baseline}
            for i, (treated, baseline) in enumerate(result.recovery_times(window))
        ]
        pd.DataFrame(rows, columns=["seed_index", "treated_s", "baseline_s"]).to_csv(path, index=False)
        faster = sum(
            1 for r in rows
            if r["treated_s"] is not None and (r["baseline_s"] is None or r["treated_s"] < r["baseline_s"])
        )
        print(f"Recovered faster than no control in {faster} of {len(rows)} seeds")

    def evaluate(self, route: str, checkpoint: str | None, agent: str | None, sigma_d: float, sigma_s: float,
                 seeds: int, seed: int, anomalies: Sequence[AnomalySpec], out: str) -> None:
        """Evaluate one agent in one noise cell against no control on paired seeds."""
        run = load_run_config(route)
        policy = self._eval_agent(run, checkpoint, agent, seed)
        cell = EvalCell(sigma_d, sigma_s, tuple(anomalies) or run.scenario.anomalies)

        self.prepare_dir(out)
        results = evaluate(policy, run, [cell], seeds, seed=seed, out_dir=out)
        write_report_csv([r.report for r in results], os.path.join(out, config.report_name))

        sources = list(run.sources) + ([checkpoint] if checkpoint else [])
        write_run_manifest(
            {"document": run.document, "agent": policy.spec.to_dict(), "cell": cell.slug, "seeds": seeds,
             "seed": seed},
            sources,
            os.path.join(out, config.manifest_name),
        )
        self.print_reports([r.report for r in results])
        if cell.anomalies:
            self._write_recovery(results[0], os.path.join(out, RECOVERY_NAME))

    def sweep(self, config_path: str, out: str, seeds: int | None, overrides: Sequence[tuple[str, Any]]) -> None:
        """Run every agent of the sweep section over the grid and the transfer routes."""
        run = load_run_config(config_path, self.overrides(overrides))
        base_dir = os.path.dirname(os.path.abspath(config_path))
        reports = run_sweep(run, self.prepare_dir(out), base_dir=base_dir, n_seeds=seeds)
        self.print_reports(reports)
        print(f"Report: {os.path.join(out, config.report_name)}")

    def execute(self, command: str, *args: Any, **kwargs: Any) -> None:
        """Execute the specified experiment command."""

        commands: dict[str, Callable[..., None]] = {
            "train": self.train,
            "eval": self.evaluate,
            "sweep": self.sweep,
        }

        if command not in commands:
            raise ValueError(f"Unknown experiment command: {command}")

        commands[command](*args, **kwargs)
