#!/usr/bin/env python3.12
"""
spec

Perturbation and anomaly descriptions applied on top of a base episode.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from typing import Any

import transit_control_app.src.config.base as config
from transit_control_app.src.errors import ScenarioError


class AnomalyKind(StrEnum):
    INTERRUPTION = "interruption"
    DEMAND_SURGE = "demand-surge"

    @classmethod
    def list(cls) -> list[str]:
        return [c.value for c in cls]

    @classmethod
    def str(cls) -> str:
        return ", ".join(cls.list())


@dataclass(frozen=True)
class PerturbationSpec:
    sigma_d: float = 0.0
    sigma_s: float = 0.0
    resample_per_episode: bool = True

    def __post_init__(self) -> None:
        if self.sigma_d < 0 or self.sigma_s < 0:
            raise ScenarioError(f"Perturbation sigmas must be non-negative, got {self.sigma_d}, {self.sigma_s}")


@dataclass(frozen=True)
class AnomalySpec:
    """One anomaly event.

    Targets are bus ids for interruptions and stop indices for surges. When
    `targets` is empty and `n_random` is positive, targets are drawn per
    episode by `pick_targets`.
    """
    kind: AnomalyKind
    window: tuple[float, float]
    targets: tuple[int, ...] = ()
    factor: float = 1.0
    extra_pax: int = 0
    n_random: int = 0

    def __post_init__(self) -> None:
        start, end = self.window
        if not 0 < self.factor <= 1:
            raise ScenarioError(f"Anomaly factor {self.factor} outside (0, 1]")
        if self.extra_pax < 0:
            raise ScenarioError("Anomaly extra_pax must be non-negative")
        if start < 0 or end <= start:
            raise ScenarioError(f"Anomaly window ({start}, {end}) is not a valid interval")
        if self.n_random < 0:
            raise ScenarioError("Anomaly n_random must be non-negative")

    @property
    def needs_targets(self) -> bool:
        return not self.targets and self.n_random > 0

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AnomalySpec":
        try:
            kind = AnomalyKind(data["kind"])
        except (KeyError, ValueError) as e:
            raise ScenarioError(f"Anomaly kind must be one of: {AnomalyKind.str()}") from e

        if "window" in data:
            start, end = data["window"]
        else:
            start, end = data.get("start", 0.0), data.get("end", config.horizon)

        return cls(
            kind=kind,
            window=(float(start), float(end)),
            targets=tuple(int(t) for t in data.get("targets", ())),
            factor=float(data.get("factor", 1.0)),
            extra_pax=int(data.get("extra_pax", 0)),
            n_random=int(data.get("n_random", 0)),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "window": list(self.window),
            "targets": list(self.targets),
            "factor": self.factor,
            "extra_pax": self.extra_pax,
            "n_random": self.n_random,
        }


@dataclass(frozen=True)
class ScenarioConfig:
    perturbation: PerturbationSpec = field(default_factory=PerturbationSpec)
    anomalies: tuple[AnomalySpec, ...] = ()
    train_sigma_d_range: tuple[float, float] = config.train_sigma_d_range
    train_sigma_s_range: tuple[float, float] = config.train_sigma_s_range


@dataclass(frozen=True)
class ScenarioDraw:
    """Episode-level scaling actually applied."""
    sigma_d: float
    sigma_s: float
    demand_scale: float
    speed_scale: float
