#!/usr/bin/env python3.12
"""
perturbation

Episode-level demand and speed scaling.

Author: transit-control maintainers

Date: 17.10.2026
"""

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.scenario.spec import ScenarioConfig, ScenarioDraw


def sample_demand_scale(rng: np.random.Generator, sigma_d: float) -> float:
    """p_d ~ N(1, sigma_d^2) clamped at 0."""
    if sigma_d < 0:
        raise ValueError("sigma_d must be non-negative")
    return max(0.0, float(rng.normal(1.0, sigma_d)))


def sample_speed_scale(rng: np.random.Generator, sigma_s: float) -> float:
    """p_s ~ N(1, sigma_s^2) clamped at `min_speed_scale`."""
    if sigma_s < 0:
        raise ValueError("sigma_s must be non-negative")
    return max(config.min_speed_scale, float(rng.normal(1.0, sigma_s)))


def sample_episode_scenario(rng: np.random.Generator, cfg: ScenarioConfig, train: bool) -> ScenarioDraw:
    if train and cfg.perturbation.resample_per_episode:
        sigma_d = float(rng.uniform(*cfg.train_sigma_d_range))
        sigma_s = float(rng.uniform(*cfg.train_sigma_s_range))
    else:
        sigma_d = cfg.perturbation.sigma_d
        sigma_s = cfg.perturbation.sigma_s

    return ScenarioDraw(
        sigma_d=sigma_d,
        sigma_s=sigma_s,
        demand_scale=sample_demand_scale(rng, sigma_d),
        speed_scale=sample_speed_scale(rng, sigma_s),
    )
