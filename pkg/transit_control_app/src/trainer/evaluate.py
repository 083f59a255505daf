#!/usr/bin/env python3.12
"""
evaluate

Seeded evaluation of a policy over a scenario grid, paired against the
no-control baseline on identical scenario draws.

Author: transit-control maintainers

Date: 17.10.2026
"""

import dataclasses
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.base import Agent
from transit_control_app.src.agents.factory import AgentFactory
from transit_control_app.src.agents.spec import AgentSpec
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.config.manager import RunConfig
from transit_control_app.src.env.environment import EpisodeLog
from transit_control_app.src.env.replay import ReplayMemory, dump_experiences
from transit_control_app.src.metrics.report import MetricsReport, compute_metrics, paired_deltas, recovery_time
from transit_control_app.src.scenario.spec import AnomalySpec, PerturbationSpec
from transit_control_app.src.sim.trajectory import write_trajectory_csv
from transit_control_app.src.trainer.episode import run_episode
from transit_control_app.src.trainer.train import make_env

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EvalCell:
    sigma_d: float
    sigma_s: float
    anomalies: tuple[AnomalySpec, ...] = ()

    @property
    def anomaly_label(self) -> str:
        return ";".join(a.kind.value for a in self.anomalies)

    @property
    def slug(self) -> str:
        name = f"sd{self.sigma_d:g}_ss{self.sigma_s:g}"
        return f"{name}_{self.anomaly_label.replace(';', '+')}" if self.anomalies else name


@dataclass
class EvalResult:
    cell: EvalCell
    report: MetricsReport
    logs: list[EpisodeLog] = field(default_factory=list)
    baseline_logs: list[EpisodeLog] = field(default_factory=list)

    def recovery_times(self, window: tuple[float, float]) -> list[tuple[float | None, float | None]]:
        """(treated, baseline) recovery time per paired seed."""
        return [
            (recovery_time(t.cv2_samples, window), recovery_time(b.cv2_samples, window))
            for t, b in zip(self.logs, self.baseline_logs)
        ]


def evaluation_grid(sigma_s_grid: Sequence[float] = config.eval_sigma_s_grid,
                    sigma_d_grid: Sequence[float] = config.eval_sigma_d_grid,
                    fixed_sigma_d: float = config.fixed_sigma_d, fixed_sigma_s: float = config.fixed_sigma_s,
                    anomalies: Sequence[AnomalySpec] = ()) -> list[EvalCell]:
    """Speed sweep at fixed demand noise, then demand sweep at fixed speed noise, without duplicates."""
    cells = [EvalCell(fixed_sigma_d, s, tuple(anomalies)) for s in sigma_s_grid]
    cells += [EvalCell(d, fixed_sigma_s, tuple(anomalies)) for d in sigma_d_grid]
    return list(dict.fromkeys(cells))


def evaluation_seeds(root_seed: int, n_seeds: int) -> list[int]:
    return [int(s) for s in np.random.SeedSequence(root_seed).generate_state(n_seeds, dtype=np.uint64)]


def baseline_agent(run: RunConfig) -> Agent:
    return AgentFactory.create_agent(AgentSpec(AgentVariant.NC, max_hold=run.env.max_hold), run.route,
                                     np.random.default_rng(0))


def _cell_run(run: RunConfig, cell: EvalCell) -> RunConfig:
    scenario = dataclasses.replace(
        run.scenario,
        perturbation=PerturbationSpec(cell.sigma_d, cell.sigma_s, resample_per_episode=False),
        anomalies=cell.anomalies,
    )
    return dataclasses.replace(run, scenario=scenario)


def evaluate_cell(agent: Agent, run: RunConfig, cell: EvalCell, seeds: Sequence[int],
                  baseline: Agent | None = None, out_dir: str | None = None) -> EvalResult:
    """Run `agent` and the baseline on the same seeds and draws; report metrics with paired deltas."""
    cell_run = _cell_run(run, cell)
    baseline = baseline or baseline_agent(run)
    record = out_dir is not None
    env = make_env(cell_run, record_trajectory=True)
    baseline_env = make_env(cell_run, record_trajectory=True)
    memory = ReplayMemory(threshold=0) if record else None

    logs, baseline_logs = [], []
    for seed in seeds:
        log = run_episode(agent, env, seed, memory=memory)
        # same seed, same scenario stream: draws and anomaly targets match the treated run
        baseline_logs.append(run_episode(baseline, baseline_env, seed))
        logs.append(log)

    treated = [compute_metrics(log) for log in logs]
    reference = [compute_metrics(log) for log in baseline_logs]
    report = paired_deltas(treated, reference).label(
        agent=str(agent),
        route=run.route.name,
        sigma_d=cell.sigma_d,
        sigma_s=cell.sigma_s,
        anomaly=cell.anomaly_label,
    )

    if out_dir is not None and memory is not None:
        _write_artifacts(out_dir, str(agent), cell, logs, memory)

    logger.info("%s on %s %s: AHT %.1f s, dAWT %s, dATT %s, dAOD %s", agent, run.route.name, cell.slug,
                report.aht_s or 0.0, _fmt(report.d_awt_s), _fmt(report.d_att_s), _fmt(report.d_aod))
    return EvalResult(cell=cell, report=report, logs=logs, baseline_logs=baseline_logs)


def _fmt(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.3f}"


def _write_artifacts(out_dir: str, agent: str, cell: EvalCell, logs: Iterable[EpisodeLog],
                     memory: ReplayMemory) -> None:
    cell_dir = os.path.join(out_dir, agent, cell.slug)
    os.makedirs(cell_dir, exist_ok=True)
    first = next(iter(logs), None)
    if first is not None and first.trajectory.rows:
        write_trajectory_csv(first.trajectory, os.path.join(cell_dir, config.trajectory_name))
    experiences = [exp for bus_id in sorted(memory.buffers) for exp in memory.buffers[bus_id]]
    dump_experiences(experiences, os.path.join(cell_dir, config.experiences_name))


def evaluate(agent: Agent, run: RunConfig, cells: Sequence[EvalCell], n_seeds: int, seed: int = 0,
             out_dir: str | None = None, workers: int | None = None) -> list[EvalResult]:
    """Evaluate `agent` on every cell concurrently; results keep the order of `cells`."""
    if n_seeds < 1:
        raise ValueError("Evaluation needs at least one seed")
    seeds = evaluation_seeds(seed, n_seeds)

    def job(cell: EvalCell) -> EvalResult:
        return evaluate_cell(agent, run, cell, seeds, out_dir=out_dir)

    with ThreadPoolExecutor(max_workers=workers or min(len(cells), os.cpu_count() or 1) or 1) as pool:
        return list(pool.map(job, cells))
