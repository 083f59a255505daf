#!/usr/bin/env python3.12
"""
config

Static inputs of a simulated route: physical constants, geometry and demand.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass, field

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.errors import ConfigError
from transit_control_app.src.types import FloatArray


@dataclass(frozen=True)
class SimConfig:
    """Physical constants of the simulation.

    Attributes:
        alight_time_per_pax: seconds per alighting passenger (t_a)
        board_time_per_pax: seconds per boarding passenger (t_b)
        nominal_speed: cruising speed v in km/h
        speed_noise_lo: lower bound of the per-link speed factor
        speed_noise_hi: upper bound of the per-link speed factor
        capacity: passengers per bus
        tick: simulation step in seconds
        horizon: simulated duration T in seconds
    """
    alight_time_per_pax: float = config.alight_time_per_pax
    board_time_per_pax: float = config.board_time_per_pax
    nominal_speed: float = config.nominal_speed
    speed_noise_lo: float = config.speed_noise[0]
    speed_noise_hi: float = config.speed_noise[1]
    capacity: int = config.capacity
    tick: float = config.tick
    horizon: float = config.horizon

    def __post_init__(self) -> None:
        errors = []
        for name in ("alight_time_per_pax", "board_time_per_pax", "nominal_speed",
                     "speed_noise_lo", "speed_noise_hi", "tick", "horizon"):
            if not getattr(self, name) > 0:
                errors.append(f"Sim '{name}' must be strictly positive")
        if not self.speed_noise_lo < self.speed_noise_hi:
            errors.append("Sim speed_noise must satisfy lo < hi")
        if not isinstance(self.capacity, (int, np.integer)) or self.capacity < 1:
            errors.append("Sim 'capacity' must be an integer >= 1")
        if errors:
            raise ConfigError(errors)


@dataclass(frozen=True)
class RouteSpec:
    """Linear route from the origin terminal to the final terminal."""
    stop_positions: tuple[float, ...]
    n_services: int
    dispatch_headway_mean: float
    dispatch_headway_std: float
    route_length: float
    name: str = "route"

    def __post_init__(self) -> None:
        errors = []
        positions = self.stop_positions
        if len(positions) < 2:
            errors.append("Route needs at least two stops")
        elif any(b <= a for a, b in zip(positions, positions[1:])):
            errors.append("Route stops_km must be strictly increasing")
        elif positions[0] < 0:
            errors.append("Route stops_km must be non-negative")
        elif not np.isclose(positions[-1], self.route_length):
            errors.append("Route last stop must sit at the route length")
        if self.n_services < 2:
            errors.append("Route 'services' must be at least 2")
        if self.dispatch_headway_mean <= 0:
            errors.append("Route 'headway_mean_s' must be strictly positive")
        if self.dispatch_headway_std < 0:
            errors.append("Route 'headway_std_s' must be non-negative")
        if errors:
            raise ConfigError(errors)

    @property
    def n_stops(self) -> int:
        return len(self.stop_positions)


@dataclass(frozen=True)
class DemandMatrix:
    """Origin-destination arrival rates d_ij in pax/hour; forward trips only."""
    rates: FloatArray = field(repr=False)

    def __post_init__(self) -> None:
        rates = np.asarray(self.rates, dtype=np.float64)
        if rates.ndim != 2 or rates.shape[0] != rates.shape[1]:
            raise ConfigError("Demand rates must be a square matrix")
        if not np.all(np.isfinite(rates)) or np.any(rates < 0):
            raise ConfigError("Demand rates must be finite and non-negative")
        if np.any(np.tril(rates) != 0):
            raise ConfigError("Demand rates must be zero on and below the diagonal")
        rates.setflags(write=False)
        object.__setattr__(self, "rates", rates)

    @property
    def n_stops(self) -> int:
        return int(self.rates.shape[0])

    def scaled(self, factor: float) -> FloatArray:
        return self.rates * factor

    def outbound(self, stop: int) -> FloatArray:
        return self.rates[stop]


def synthetic_demand(route: RouteSpec, total_pax_per_hour: float, decay_km: float = 5.0, seed: int = 0) -> DemandMatrix:
    """Forward gravity-style OD matrix normalized to a total hourly volume."""
    if total_pax_per_hour < 0 or decay_km <= 0:
        raise ConfigError("Synthetic demand needs total >= 0 and decay_km > 0")

    rng = np.random.default_rng(seed)
    n = route.n_stops
    positions = np.asarray(route.stop_positions)
    produce = rng.gamma(2.0, 1.0, size=n)
    attract = rng.gamma(2.0, 1.0, size=n)
    distance = positions[None, :] - positions[:, None]

    rates = np.where(distance > 0, produce[:, None] * attract[None, :] * np.exp(-np.abs(distance) / decay_km), 0.0)
    total = rates.sum()
    if total > 0:
        rates *= total_pax_per_hour / total
    return DemandMatrix(np.triu(rates, k=1))
