#!/usr/bin/env python3.12
"""
Validator for transit-control run documents.

Author: transit-control maintainers

Date: 17.10.2026
"""

import math
from numbers import Real
from typing import Any, Dict, List, Tuple

from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.scenario.spec import AnomalyKind

SECTIONS = ("route", "demand", "sim", "scenario", "env", "agent", "trainer", "sweep")


def _is_number(value: Any) -> bool:
    return isinstance(value, Real) and not isinstance(value, bool) and math.isfinite(float(value))


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class ConfigValidator:
    """Checks a parsed run document and collects every problem instead of stopping at the first."""

    def __init__(self, require_agent: bool = False) -> None:
        self.require_agent = require_agent
        self.errors: List[str] = []

    def validate(self, document: Dict[str, Any]) -> Tuple[bool, List[str]]:
        """
        Validate the document before building a run configuration.

        Returns:
            Tuple of (is_valid, errors)
        """
        self.errors = []

        unknown = [key for key in document if key not in SECTIONS]
        if unknown:
            self.errors.append(f"Unknown sections: {', '.join(sorted(unknown))}")

        if "route" not in document:
            self.errors.append("Document is missing required section 'route'")
        else:
            self._validate_route(document["route"])

        n_stops = len(document.get("route", {}).get("stops_km", [])) if isinstance(document.get("route"), dict) else 0
        self._validate_demand(document.get("demand"), n_stops)
        self._validate_sim(document.get("sim", {}))
        self._validate_scenario(document.get("scenario", {}))
        self._validate_env(document.get("env", {}))

        if "agent" in document:
            self._validate_agent(document["agent"])
        elif self.require_agent:
            self.errors.append("Document is missing required section 'agent'")

        self._validate_trainer(document.get("trainer", {}))
        if "sweep" in document:
            self._validate_sweep(document["sweep"])

        is_valid = len(self.errors) == 0
        return is_valid, self.errors

    def _section(self, name: str, value: Any) -> bool:
        if not isinstance(value, dict):
            self.errors.append(f"Section '{name}' must be a mapping")
            return False
        return True

    def _positive(self, section: str, data: Dict[str, Any], fields: List[str], allow_zero: bool = False) -> None:
        for field in fields:
            if field not in data:
                continue
            value = data[field]
            if not _is_number(value) or value < 0 or (value == 0 and not allow_zero):
                bound = "non-negative" if allow_zero else "strictly positive"
                self.errors.append(f"{section} '{field}' must be a {bound} number")

    def _validate_route(self, route: Any) -> None:
        if not self._section("route", route):
            return

        for field in ["stops_km", "services", "headway_mean_s", "headway_std_s"]:
            if field not in route:
                self.errors.append(f"Route is missing required field '{field}'")

        stops = route.get("stops_km", [])
        if not isinstance(stops, list) or not all(_is_number(s) for s in stops):
            self.errors.append("Route 'stops_km' must be a list of numbers")
        elif len(stops) < 2:
            self.errors.append("Route needs at least two stops")
        elif any(b <= a for a, b in zip(stops, stops[1:])):
            self.errors.append("Route stops_km must be strictly increasing")

        if "services" in route and (not _is_int(route["services"]) or route["services"] < 2):
            self.errors.append("Route 'services' must be an integer >= 2")
        self._positive("Route", route, ["headway_mean_s", "length_km"])
        self._positive("Route", route, ["headway_std_s"], allow_zero=True)
        if "name" in route and not isinstance(route["name"], str):
            self.errors.append("Route 'name' must be a string")

    def _validate_demand(self, demand: Any, n_stops: int) -> None:
        if demand is None:
            self.errors.append("Document is missing required section 'demand'")
            return
        if not self._section("demand", demand):
            return

        has_rates = "rates_pax_per_hour" in demand
        has_synthetic = "synthetic" in demand
        if has_rates == has_synthetic:
            self.errors.append("Demand must give exactly one of 'rates_pax_per_hour' or 'synthetic'")
            return

        if has_synthetic:
            synthetic = demand["synthetic"]
            if not isinstance(synthetic, dict) or "total_pax_per_hour" not in synthetic:
                self.errors.append("Demand 'synthetic' needs 'total_pax_per_hour'")
                return
            self._positive("Demand", synthetic, ["total_pax_per_hour"], allow_zero=True)
            self._positive("Demand", synthetic, ["decay_km"])
            if "seed" in synthetic and not _is_int(synthetic["seed"]):
                self.errors.append("Demand 'seed' must be an integer")
            return

        rates = demand["rates_pax_per_hour"]
        if not isinstance(rates, list) or not all(isinstance(row, list) for row in rates):
            self.errors.append("Demand 'rates_pax_per_hour' must be a matrix")
            return
        if n_stops and (len(rates) != n_stops or any(len(row) != n_stops for row in rates)):
            self.errors.append(f"Demand matrix must be {n_stops}x{n_stops} to match the route")
        for i, row in enumerate(rates):
            for j, value in enumerate(row):
                if not _is_number(value) or value < 0:
                    self.errors.append(f"Demand rate [{i}][{j}] must be a non-negative number")
                elif j <= i and value != 0:
                    self.errors.append(f"Demand rate [{i}][{j}] must be zero, passengers travel forward")

    def _validate_sim(self, sim: Any) -> None:
        if not self._section("sim", sim):
            return
        self._positive("Sim", sim, ["t_a", "t_b", "v_kmh", "tick_s", "horizon_s"])

        if "capacity" in sim and (not _is_int(sim["capacity"]) or sim["capacity"] < 1):
            self.errors.append("Sim 'capacity' must be an integer >= 1")

        if "speed_noise" in sim:
            noise = sim["speed_noise"]
            if (not isinstance(noise, list) or len(noise) != 2 or not all(_is_number(n) for n in noise)
                    or not 0 < noise[0] < noise[1]):
                self.errors.append("Sim 'speed_noise' must be [lo, hi] with 0 < lo < hi")

    def _validate_scenario(self, scenario: Any) -> None:
        if not self._section("scenario", scenario):
            return
        self._positive("Scenario", scenario, ["sigma_d", "sigma_s"], allow_zero=True)

        for field in ["train_sigma_d_range", "train_sigma_s_range"]:
            if field in scenario:
                bounds = scenario[field]
                if (not isinstance(bounds, list) or len(bounds) != 2 or not all(_is_number(b) for b in bounds)
                        or not 0 <= bounds[0] <= bounds[1]):
                    self.errors.append(f"Scenario '{field}' must be [lo, hi] with 0 <= lo <= hi")

        anomalies = scenario.get("anomalies", [])
        if not isinstance(anomalies, list):
            self.errors.append("Scenario 'anomalies' must be a list")
            return
        for index, anomaly in enumerate(anomalies):
            self._validate_anomaly(index, anomaly)

    def _validate_anomaly(self, index: int, anomaly: Any) -> None:
        label = f"Anomaly {index}"
        if not isinstance(anomaly, dict):
            self.errors.append(f"{label} must be a mapping")
            return

        if anomaly.get("kind") not in AnomalyKind.list():
            self.errors.append(f"{label} 'kind' must be one of: {AnomalyKind.str()}")

        if "factor" in anomaly and (not _is_number(anomaly["factor"]) or not 0 < anomaly["factor"] <= 1):
            self.errors.append(f"{label} 'factor' must lie in (0, 1]")
        if "extra_pax" in anomaly and (not _is_int(anomaly["extra_pax"]) or anomaly["extra_pax"] < 0):
            self.errors.append(f"{label} 'extra_pax' must be a non-negative integer")

        targets = anomaly.get("targets", [])
        if not isinstance(targets, list) or not all(_is_int(t) and t >= 0 for t in targets):
            self.errors.append(f"{label} 'targets' must be a list of non-negative integers")
        if not targets and not anomaly.get("n_random"):
            self.errors.append(f"{label} needs 'targets' or 'n_random'")

        window = anomaly.get("window", [anomaly.get("start", 0), anomaly.get("end", math.inf)])
        if (not isinstance(window, list) or len(window) != 2
                or not all(isinstance(w, Real) for w in window) or not 0 <= window[0] < window[1]):
            self.errors.append(f"{label} 'window' must be [start, end] with 0 <= start < end")

    def _validate_env(self, env: Any) -> None:
        if not self._section("env", env):
            return
        self._positive("Env", env, ["max_hold_s", "cv2_interval_s", "trajectory_interval_s"])
        if "reward_weight" in env and (not _is_number(env["reward_weight"]) or not 0 <= env["reward_weight"] <= 1):
            self.errors.append("Env 'reward_weight' must lie in [0, 1]")

    def _validate_agent(self, agent: Any) -> None:
        if not self._section("agent", agent):
            return
        variant = str(agent.get("variant", "")).lower()
        if variant not in AgentVariant.list():
            self.errors.append(f"Agent 'variant' must be one of: {AgentVariant.str()}")

        for field in ["n_quantiles", "n_target_quantiles", "n_cos", "attention_dim"]:
            if field in agent and (not _is_int(agent[field]) or agent[field] < 1):
                self.errors.append(f"Agent '{field}' must be an integer >= 1")
        self._positive("Agent", agent, ["kappa", "lr_actor", "lr_critic", "lr_meta"])
        self._positive("Agent", agent, ["exploration_std"], allow_zero=True)
        if "gamma" in agent and (not _is_number(agent["gamma"]) or not 0 <= agent["gamma"] <= 1):
            self.errors.append("Agent 'gamma' must lie in [0, 1]")
        if "target_mix" in agent and (not _is_number(agent["target_mix"]) or not 0 < agent["target_mix"] <= 1):
            self.errors.append("Agent 'target_mix' must lie in (0, 1]")
        if "beta" in agent and agent["beta"] is not None and not _is_number(agent["beta"]):
            self.errors.append("Agent 'beta' must be a number")

    def _validate_trainer(self, trainer: Any) -> None:
        if not self._section("trainer", trainer):
            return
        for field in ["episodes", "batch_size", "buffer_capacity", "eval_seeds"]:
            if field in trainer and (not _is_int(trainer[field]) or trainer[field] < 1):
                self.errors.append(f"Trainer '{field}' must be an integer >= 1")
        if "updates_per_episode" in trainer and (not _is_int(trainer["updates_per_episode"])
                                                 or trainer["updates_per_episode"] < 0):
            self.errors.append("Trainer 'updates_per_episode' must be a non-negative integer")
        if "buffer_threshold" in trainer:
            threshold = trainer["buffer_threshold"]
            if not (threshold == "inf" or (_is_number(threshold) and threshold >= 0)):
                self.errors.append("Trainer 'buffer_threshold' must be a non-negative number or 'inf'")
        self._positive("Trainer", trainer, ["divergence_limit"])
        if "seed" in trainer and not _is_int(trainer["seed"]):
            self.errors.append("Trainer 'seed' must be an integer")

    def _validate_sweep(self, sweep: Any) -> None:
        if not self._section("sweep", sweep):
            return
        agents = sweep.get("agents", [])
        if not isinstance(agents, list) or not agents:
            self.errors.append("Sweep 'agents' must be a non-empty list")
        else:
            for variant in agents:
                if str(variant).lower() not in AgentVariant.list():
                    self.errors.append(f"Sweep agent '{variant}' must be one of: {AgentVariant.str()}")

        for field in ["sigma_s_grid", "sigma_d_grid"]:
            grid = sweep.get(field, [])
            if not isinstance(grid, list) or not all(_is_number(v) and v >= 0 for v in grid):
                self.errors.append(f"Sweep '{field}' must be a list of non-negative numbers")

        checkpoints = sweep.get("checkpoints", {})
        if not isinstance(checkpoints, dict) or not all(isinstance(p, str) for p in checkpoints.values()):
            self.errors.append("Sweep 'checkpoints' must map agent variants to checkpoint paths")

        routes = sweep.get("routes", [])
        if not isinstance(routes, list) or not all(isinstance(r, str) for r in routes):
            self.errors.append("Sweep 'routes' must be a list of route document paths")
