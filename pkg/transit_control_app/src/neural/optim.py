#!/usr/bin/env python3.12
"""
optim

Adam and soft target updates on ParameterSets.

Author: transit-control maintainers

Date: 17.10.2026
"""

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.errors import NonFiniteGradientError, ShapeError
from transit_control_app.src.neural.parameters import ParameterSet
from transit_control_app.src.types import FloatArray


def adam_step(params: ParameterSet, grads: dict[str, FloatArray] | None = None, lr: float = 1e-3,
              betas: tuple[float, float] = config.adam_betas, eps: float = config.adam_eps) -> None:
    """One bias-corrected Adam descent step; pass negated gradients to ascend."""
    grads = params.grads if grads is None else grads
    for key, g in grads.items():
        if key not in params:
            raise KeyError(f"{params.name} has no parameter '{key}'")
        if g.shape != params[key].shape:
            raise ShapeError(f"{params.name}.{key}: gradient {g.shape} does not match {params[key].shape}")
        if not np.all(np.isfinite(g)):
            raise NonFiniteGradientError(f"Non-finite gradient in {params.name}.{key} at step {params.step + 1}")

    beta1, beta2 = betas
    params.step += 1
    correction1 = 1.0 - beta1**params.step
    correction2 = 1.0 - beta2**params.step

    for key, g in grads.items():
        params.m[key] = beta1 * params.m[key] + (1.0 - beta1) * g
        params.v[key] = beta2 * params.v[key] + (1.0 - beta2) * g * g
        m_hat = params.m[key] / correction1
        v_hat = params.v[key] / correction2
        params.values[key] = params.values[key] - lr * m_hat / (np.sqrt(v_hat) + eps)
    params.version += 1


def copy_to_target(source: ParameterSet, target: ParameterSet, mix: float = config.target_mix) -> None:
    """target <- mix * source + (1 - mix) * target."""
    if not 0 < mix <= 1:
        raise ValueError(f"Target mix {mix} outside (0, 1]")
    if source.shapes != target.shapes:
        raise ShapeError(f"{source.name} and {target.name} have different shapes")
    for key in source:
        target.values[key] = source[key].copy() if mix == 1 else mix * source[key] + (1.0 - mix) * target[key]
    target.version += 1
