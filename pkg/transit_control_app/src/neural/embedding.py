#!/usr/bin/env python3.12
"""
embedding

Cosine embedding of quantile fractions.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.errors import ConfigError
from transit_control_app.src.neural.parameters import ParameterSet
from transit_control_app.src.neural.tensor import Tensor
from transit_control_app.src.types import FloatArray


@dataclass(frozen=True)
class QuantileEmbedding:
    n_cos: int = config.n_cos
    dim: int = config.hidden_widths[-1]
    prefix: str = "embed"

    def __post_init__(self) -> None:
        if self.n_cos < 1 or self.dim < 1:
            raise ConfigError("Quantile embedding needs n_cos >= 1 and dim >= 1")

    @property
    def weight(self) -> str:
        return f"{self.prefix}.w"

    @property
    def bias(self) -> str:
        return f"{self.prefix}.b"


def init_embedding(params: ParameterSet, emb: QuantileEmbedding, rng: np.random.Generator) -> ParameterSet:
    params.add(emb.weight, rng.normal(0.0, np.sqrt(2.0 / emb.n_cos), size=(emb.n_cos, emb.dim)))
    params.add(emb.bias, np.zeros(emb.dim))
    return params


def cosine_features(taus: FloatArray, n_cos: int) -> FloatArray:
    """cos(pi * i * tau) for i = 0..n_cos-1, appended as a trailing axis."""
    taus = np.asarray(taus, dtype=np.float64)
    if np.any(taus < 0) or np.any(taus > 1) or not np.all(np.isfinite(taus)):
        raise ValueError("Quantile fractions must lie in [0, 1]")
    return np.cos(np.pi * np.arange(n_cos) * taus[..., None])


def quantile_embed(taus: FloatArray, params: dict[str, Tensor], emb: QuantileEmbedding) -> Tensor:
    features = Tensor(cosine_features(taus, emb.n_cos))
    return (features @ params[emb.weight] + params[emb.bias]).relu()
