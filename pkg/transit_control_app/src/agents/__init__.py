"""
Holding control policies.
"""

from transit_control_app.src.agents.base import Agent, UpdateStats
from transit_control_app.src.agents.distortion import (
    DistortionWeights,
    WeightSource,
    distorted_q,
    distorted_value,
    uniform_weights,
    wang_weights,
)
from transit_control_app.src.agents.factory import AgentFactory
from transit_control_app.src.agents.quantile import (
    QuantileSet,
    fraction_grid,
    huber,
    midpoints,
    quantile_huber,
    quantile_regression_loss,
)
from transit_control_app.src.agents.registry import AgentRegistry
from transit_control_app.src.agents.rule import fh_hold
from transit_control_app.src.agents.spec import AgentSpec, FHConfig
from transit_control_app.src.agents.variant import AgentVariant

__all__ = [
    "Agent",
    "AgentFactory",
    "AgentRegistry",
    "AgentSpec",
    "AgentVariant",
    "DistortionWeights",
    "FHConfig",
    "QuantileSet",
    "UpdateStats",
    "WeightSource",
    "distorted_q",
    "distorted_value",
    "fh_hold",
    "fraction_grid",
    "huber",
    "midpoints",
    "quantile_huber",
    "quantile_regression_loss",
    "uniform_weights",
    "wang_weights",
]
