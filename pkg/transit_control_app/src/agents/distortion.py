#!/usr/bin/env python3.12
"""
distortion

Risk distortion weights over quantile midpoints and the distorted value.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

import numpy as np
from scipy.stats import norm

from transit_control_app.src.errors import ShapeError
from transit_control_app.src.neural.tensor import Tensor, as_tensor
from transit_control_app.src.types import FloatArray


class WeightSource(StrEnum):
    UNIFORM = "uniform"
    WANG = "wang"
    META = "meta"


@dataclass(frozen=True)
class DistortionWeights:
    values: FloatArray
    source: WeightSource

    def __post_init__(self) -> None:
        if np.any(self.values < 0):
            raise ValueError("Distortion weights must be non-negative")


def uniform_weights(n: int) -> DistortionWeights:
    return DistortionWeights(np.ones(n), WeightSource.UNIFORM)


def wang_weights(beta: float, midpoints: FloatArray) -> DistortionWeights:
    """Derivative of the Wang transform g(t) = Phi(Phi^-1(t) + beta) at each midpoint."""
    midpoints = np.asarray(midpoints, dtype=np.float64)
    if np.any(midpoints <= 0) or np.any(midpoints >= 1):
        raise ValueError("Wang weights need midpoints strictly inside (0, 1)")
    z = norm.ppf(midpoints)
    return DistortionWeights(norm.pdf(z + beta) / norm.pdf(z), WeightSource.WANG)


def distorted_q(values: FloatArray, weights: FloatArray, fractions: FloatArray) -> float:
    """sum_i (tau_{i+1} - tau_i) * w_i * Z_i for one quantile set."""
    values, weights = np.asarray(values, dtype=np.float64), np.asarray(weights, dtype=np.float64)
    widths = np.diff(np.asarray(fractions, dtype=np.float64))
    if not values.shape == weights.shape == widths.shape:
        raise ShapeError(f"Quantile values {values.shape}, weights {weights.shape} and widths {widths.shape} differ")
    return float(np.sum(widths * weights * values))


def distorted_value(values: Tensor, weights: Tensor | FloatArray, fractions: FloatArray) -> Tensor:
    """Batched distorted value: (B, K) quantiles and (K,) or (B, K) weights -> (B,)."""
    widths = np.diff(np.asarray(fractions, dtype=np.float64))
    if values.shape[-1] != widths.shape[0]:
        raise ShapeError(f"{values.shape[-1]} quantile values for {widths.shape[0]} fraction intervals")
    return (values * as_tensor(weights) * widths).sum(axis=-1)
