#!/usr/bin/env python3.12
"""
quantile

Quantile fractions and the quantile Huber regression loss.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass

import numpy as np

from transit_control_app.src.errors import ShapeError
from transit_control_app.src.neural.tensor import Tensor, as_tensor
from transit_control_app.src.types import FloatArray


@dataclass(frozen=True)
class QuantileSet:
    """Fractions tau_0 < ... < tau_K and the values at their midpoints."""
    fractions: FloatArray
    values: FloatArray

    def __post_init__(self) -> None:
        if self.values.shape[-1] != self.fractions.shape[0] - 1:
            raise ShapeError("A quantile set needs one value per fraction interval")

    @property
    def midpoints(self) -> FloatArray:
        return midpoints(self.fractions)

    def sorted(self) -> "QuantileSet":
        return QuantileSet(self.fractions, np.sort(self.values, axis=-1))


def fraction_grid(n: int) -> FloatArray:
    """tau_k = k / n for k = 0..n."""
    if n < 1:
        raise ValueError("Need at least one quantile")
    return np.arange(n + 1) / n


def random_fractions(n: int, rng: np.random.Generator) -> FloatArray:
    inner = np.sort(rng.uniform(0.0, 1.0, size=n - 1))
    return np.concatenate([[0.0], inner, [1.0]])


def midpoints(fractions: FloatArray) -> FloatArray:
    return (fractions[1:] + fractions[:-1]) / 2.0


def huber(delta: Tensor | FloatArray | float, kappa: float) -> Tensor:
    """0.5 d^2 inside [-kappa, kappa], kappa (|d| - kappa / 2) outside."""
    delta = as_tensor(delta)
    sign = np.sign(delta.data)
    magnitude = delta * sign
    inside = (np.abs(delta.data) <= kappa).astype(np.float64)
    return delta * delta * (0.5 * inside) + (magnitude - 0.5 * kappa) * (kappa * (1.0 - inside))


def quantile_huber(delta: Tensor | FloatArray | float, tau: FloatArray | float, kappa: float) -> Tensor:
    """|tau - 1{delta < 0}| * huber(delta) / kappa, elementwise."""
    if kappa <= 0:
        raise ValueError("kappa must be strictly positive")
    tau = np.asarray(tau, dtype=np.float64)
    if np.any(tau < 0) or np.any(tau > 1):
        raise ValueError("Quantile fractions must lie in [0, 1]")
    delta = as_tensor(delta)
    asymmetry = np.abs(tau - (delta.data < 0).astype(np.float64))
    return huber(delta, kappa) * (asymmetry / kappa)


def quantile_regression_loss(values: Tensor, targets: Tensor | FloatArray, taus: FloatArray, kappa: float,
                             target_taus: FloatArray | None = None, printed: bool = False) -> Tensor:
    """Batch mean of the quantile Huber loss between (B, K) values and (B, K') targets.

    The default form sums over online fractions and averages over target
    fractions. With `printed` each pair is weighted by (tau_k - tau'_k')
    and summed over both.
    """
    targets = as_tensor(targets)
    if values.ndim != 2 or targets.ndim != 2 or values.shape[0] != targets.shape[0]:
        raise ShapeError(f"Loss needs (B, K) values and (B, K') targets, got {values.shape} and {targets.shape}")
    if values.shape[1] != len(taus):
        raise ShapeError(f"{values.shape[1]} values for {len(taus)} fractions")

    batch, k, k_target = values.shape[0], values.shape[1], targets.shape[1]
    delta = targets.reshape(batch, 1, k_target) - values.reshape(batch, k, 1)
    rho = quantile_huber(delta, np.asarray(taus)[None, :, None], kappa)

    if printed:
        if target_taus is None:
            raise ValueError("The printed loss form needs the target fractions")
        pair_weights = np.asarray(taus)[:, None] - np.asarray(target_taus)[None, :]
        return (rho * pair_weights).sum(axis=(1, 2)).mean()
    return rho.mean(axis=2).sum(axis=1).mean()
