#!/usr/bin/env python3.12
"""
base

Defaults and document loader for the transit-control application.

Author: transit-control maintainers

Date: 17.10.2026
"""

import os
from typing import Any

from yaml import YAMLError, safe_load

from transit_control_app.src.errors import ConfigError
from transit_control_app.src.types import ConfigDict

# simulation
alight_time_per_pax = 1.8  # s/pax
board_time_per_pax = 3.0  # s/pax
nominal_speed = 30.0  # km/h
speed_noise = (0.6, 1.2)
capacity = 120
tick = 1.0  # s
horizon = 4 * 3600.0  # s
min_dispatch_gap = 60.0  # s
follow_gap_km = 0.001

# environment
max_hold = 180.0  # s
reward_weight = 0.2
cv2_interval = 60.0  # s
trajectory_interval = 10.0  # s

# scenario
train_sigma_d_range = (0.0, 3.0)
train_sigma_s_range = (0.0, 0.3)
min_speed_scale = 0.1
eval_sigma_s_grid = (0.1, 0.2, 0.3)
eval_sigma_d_grid = (1.0, 2.0, 3.0)
fixed_sigma_d = 1.0
fixed_sigma_s = 0.1

# agents
n_quantiles = 32
n_target_quantiles = 32
n_cos = 64
hidden_widths = (64, 64)
attention_dim = 32
kappa = 1.0
gamma = 0.99
beta_unconfident = 0.8
beta_confident = -0.8
lr_actor = 1e-4
lr_critic = 1e-3
lr_meta = 1e-3
adam_betas = (0.9, 0.999)
adam_eps = 1e-8
target_mix = 0.005
exploration_std = 0.1
fh_mean_delay = 30.0  # s
fh_gain = 0.5

# trainer
episodes = 300
buffer_threshold = 2000
batch_size = 64
buffer_capacity = 100_000
updates_per_episode = 1
divergence_limit = 1e6
eval_seeds = 20

# outputs
checkpoint_name = "checkpoint.json"
curves_name = "curves.csv"
report_name = "report.csv"
manifest_name = "manifest.json"
trajectory_name = "trajectory.csv"
experiences_name = "experiences.jsonl"

fixtures_dir = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(__file__))), "fixtures")


def load_document(path: str) -> ConfigDict:
    """Read a JSON or YAML run document."""
    try:
        with open(path, "r") as file:
            document: Any = safe_load(file)
    except FileNotFoundError as e:
        raise ConfigError(f"Config file {path} not found") from e
    except YAMLError as e:
        raise ConfigError(f"Failed to parse {path}: {e}") from e

    if not isinstance(document, dict):
        raise ConfigError(f"Config file {path} must contain a mapping at top level")

    return document


def fixture_path(name: str) -> str:
    """Path of a shipped fixture document."""
    return os.path.join(fixtures_dir, name)
