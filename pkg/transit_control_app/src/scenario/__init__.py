"""
Demand/speed perturbations and anomaly events.
"""

from transit_control_app.src.scenario.anomaly import apply_anomaly, apply_demand_surge, apply_interruption, pick_targets
from transit_control_app.src.scenario.perturbation import (
    sample_demand_scale,
    sample_episode_scenario,
    sample_speed_scale,
)
from transit_control_app.src.scenario.spec import (
    AnomalyKind,
    AnomalySpec,
    PerturbationSpec,
    ScenarioConfig,
    ScenarioDraw,
)

__all__ = [
    "AnomalyKind",
    "AnomalySpec",
    "PerturbationSpec",
    "ScenarioConfig",
    "ScenarioDraw",
    "apply_anomaly",
    "apply_demand_surge",
    "apply_interruption",
    "pick_targets",
    "sample_demand_scale",
    "sample_episode_scenario",
    "sample_speed_scale",
]
