#!/usr/bin/env python3.12
"""
spec

Hyperparameters of a control policy.

Author: transit-control maintainers

Date: 17.10.2026
"""

import dataclasses
from dataclasses import dataclass
from typing import Any

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.errors import ConfigError

DEFAULT_BETA = {
    AgentVariant.IQNC_UCF: config.beta_unconfident,
    AgentVariant.IQNC_CF: config.beta_confident,
}


@dataclass(frozen=True)
class FHConfig:
    """Forward-headway rule parameters.

    Attributes:
        headway: schedule headway H0 in seconds
        mean_delay: average equilibrium delay in seconds
        gain: control gain
    """
    headway: float
    mean_delay: float = config.fh_mean_delay
    gain: float = config.fh_gain

    def __post_init__(self) -> None:
        if self.gain <= 0 or self.mean_delay < 0 or self.headway <= 0:
            raise ConfigError("FH needs gain > 0, mean_delay >= 0 and headway > 0")


@dataclass(frozen=True)
class AgentSpec:
    variant: AgentVariant
    n_quantiles: int = config.n_quantiles
    n_target_quantiles: int = config.n_target_quantiles
    kappa: float = config.kappa
    gamma: float = config.gamma
    beta: float | None = None
    lr_actor: float = config.lr_actor
    lr_critic: float = config.lr_critic
    lr_meta: float = config.lr_meta
    max_hold: float = config.max_hold
    target_mix: float = config.target_mix
    exploration_std: float = config.exploration_std
    n_cos: int = config.n_cos
    hidden: tuple[int, ...] = config.hidden_widths
    attention_dim: int = config.attention_dim
    activation: str = "relu"
    fh: FHConfig | None = None
    shared_parameters: bool = True
    n_agents: int = 1
    target_actor: bool = False
    random_fractions: bool = False
    printed_loss: bool = False

    def __post_init__(self) -> None:
        errors = []
        if self.n_quantiles < 1 or self.n_target_quantiles < 1:
            errors.append("Agent 'n_quantiles' and 'n_target_quantiles' must be >= 1")
        if self.kappa <= 0:
            errors.append("Agent 'kappa' must be strictly positive")
        if not 0 <= self.gamma <= 1:
            errors.append("Agent 'gamma' must lie in [0, 1]")
        if min(self.lr_actor, self.lr_critic, self.lr_meta) <= 0:
            errors.append("Agent learning rates must be strictly positive")
        if not 0 < self.target_mix <= 1:
            errors.append("Agent 'target_mix' must lie in (0, 1]")
        if self.exploration_std < 0:
            errors.append("Agent 'exploration_std' must be non-negative")
        if self.n_agents < 1:
            errors.append("Agent 'n_agents' must be >= 1")
        if errors:
            raise ConfigError(errors)

    @property
    def risk_beta(self) -> float:
        """Wang distortion parameter; 0 means risk-neutral."""
        if self.beta is not None:
            return self.beta
        return DEFAULT_BETA.get(self.variant, 0.0)

    def replace(self, **changes: Any) -> "AgentSpec":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        data = {f.name: getattr(self, f.name) for f in dataclasses.fields(self) if f.name != "fh"}
        data["variant"] = self.variant.value
        data["hidden"] = list(self.hidden)
        data["beta"] = self.risk_beta
        if self.fh is not None:
            data["fh"] = dataclasses.asdict(self.fh)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AgentSpec":
        data = dict(data)
        try:
            variant = AgentVariant(str(data.pop("variant")).lower())
        except (KeyError, ValueError) as e:
            raise ConfigError(f"Agent 'variant' must be one of: {AgentVariant.str()}") from e

        known = {f.name for f in dataclasses.fields(cls)} - {"variant"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Agent has unknown keys: {', '.join(sorted(unknown))}")

        if "hidden" in data:
            data["hidden"] = tuple(int(w) for w in data["hidden"])
        if isinstance(data.get("fh"), dict):
            data["fh"] = FHConfig(**data["fh"])
        return cls(variant=variant, **data)
