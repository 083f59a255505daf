#!/usr/bin/env python3.12
"""
gradcheck

Central finite-difference oracle for analytic gradients.

Author: transit-control maintainers

Date: 17.10.2026
"""

from typing import Callable

import numpy as np

from transit_control_app.src.neural.parameters import ParameterSet
from transit_control_app.src.types import FloatArray

EPSILON = 1e-6


def numeric_gradient(fn: Callable[[], float], params: ParameterSet, eps: float = EPSILON) -> dict[str, FloatArray]:
    """d fn / d params by central differences; `fn` must read `params` on every call."""
    grads: dict[str, FloatArray] = {}
    for key in params.names:
        original = params[key].copy()
        g = np.zeros_like(original)
        for index in np.ndindex(original.shape):
            plus = original.copy()
            plus[index] += eps
            params.set(key, plus)
            f_plus = fn()
            minus = original.copy()
            minus[index] -= eps
            params.set(key, minus)
            f_minus = fn()
            g[index] = (f_plus - f_minus) / (2 * eps)
        params.set(key, original)
        grads[key] = g
    return grads


def relative_error(analytic: FloatArray, numeric: FloatArray) -> float:
    scale = max(np.max(np.abs(analytic)), np.max(np.abs(numeric)), 1e-8)
    return float(np.max(np.abs(analytic - numeric)) / scale)


def gradient_check(fn: Callable[[], float], analytic: dict[str, FloatArray], params: ParameterSet,
                   eps: float = EPSILON) -> float:
    """Largest relative error between `analytic` gradients and finite differences of `fn`."""
    numeric = numeric_gradient(fn, params, eps)
    return max(relative_error(analytic[key], numeric[key]) for key in numeric)
