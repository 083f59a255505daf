#!/usr/bin/env python3.12
"""
anomaly

Traffic interruptions and demand surges injected into a running episode.

Author: transit-control maintainers

Date: 17.10.2026
"""

import dataclasses
import logging

import numpy as np

from transit_control_app.src.errors import ScenarioError
from transit_control_app.src.scenario.spec import AnomalyKind, AnomalySpec
from transit_control_app.src.sim.state import Interruption, SimState, Surge

logger = logging.getLogger(__name__)


def pick_targets(rng: np.random.Generator, spec: AnomalySpec, n_buses: int, n_stops: int) -> AnomalySpec:
    """Resolve `n_random` into concrete targets; specs with explicit targets pass through."""
    if not spec.needs_targets:
        return spec

    # the terminal has no boardings, so surges never target it
    pool = n_buses if spec.kind == AnomalyKind.INTERRUPTION else n_stops - 1
    if spec.n_random > pool:
        raise ScenarioError(f"Cannot pick {spec.n_random} random targets out of {pool}")

    targets = sorted(int(t) for t in rng.choice(pool, size=spec.n_random, replace=False))
    return dataclasses.replace(spec, targets=tuple(targets))


def apply_interruption(state: SimState, spec: AnomalySpec) -> None:
    """Scale the link speed of targeted buses by `factor` for the window."""
    if spec.kind != AnomalyKind.INTERRUPTION:
        raise ScenarioError(f"Expected an interruption, got {spec.kind}")
    if not spec.targets:
        raise ScenarioError("Interruption needs at least one target bus")
    _check_window(state, spec)

    unknown = [t for t in spec.targets if not 0 <= t < len(state.buses)]
    if unknown:
        raise ScenarioError(f"Interruption targets unknown buses {unknown}")

    start, end = spec.window
    state.interruptions.append(Interruption(frozenset(spec.targets), spec.factor, start, end))
    logger.debug("Interruption x%.2f on buses %s during %s", spec.factor, list(spec.targets), spec.window)


def apply_demand_surge(state: SimState, spec: AnomalySpec) -> None:
    """Inject `extra_pax` riders at every bus arrival to targeted stops during the window."""
    if spec.kind != AnomalyKind.DEMAND_SURGE:
        raise ScenarioError(f"Expected a demand surge, got {spec.kind}")
    _check_window(state, spec)

    unknown = [t for t in spec.targets if not 0 <= t < state.route.n_stops]
    if unknown:
        raise ScenarioError(f"Demand surge targets unknown stops {unknown}")

    start, end = spec.window
    state.surges.append(Surge(frozenset(spec.targets), spec.extra_pax, start, end))
    logger.debug("Surge +%d pax at stops %s during %s", spec.extra_pax, list(spec.targets), spec.window)


def apply_anomaly(state: SimState, spec: AnomalySpec) -> AnomalySpec:
    """Pick random targets when needed and install the anomaly; returns the resolved spec."""
    resolved = pick_targets(state.rng_scenario, spec, len(state.buses), state.route.n_stops)
    if resolved.kind == AnomalyKind.INTERRUPTION:
        apply_interruption(state, resolved)
    else:
        apply_demand_surge(state, resolved)
    return resolved


def _check_window(state: SimState, spec: AnomalySpec) -> None:
    start, end = spec.window
    if start < 0 or end > state.cfg.horizon or end <= start:
        raise ScenarioError(f"Anomaly window ({start}, {end}) outside horizon {state.cfg.horizon}")
