#!/usr/bin/env python3.12
"""
types

Module containing custom type definitions

Author: transit-control maintainers

Date: 17.10.2026
"""

from typing import Any, TypeAlias

import numpy as np
import numpy.typing as npt


FloatArray: TypeAlias = npt.NDArray[np.float64]

ConfigDict: TypeAlias = dict[str, Any]  # parsed run document section

TrajectoryRow: TypeAlias = tuple[float, int, float, str, int]  # tick, bus_id, position_km, phase, occupancy
CV2Sample: TypeAlias = tuple[float, float]  # time, fleet cv2

WeightsByEventCount: TypeAlias = dict[int, list[float]]  # event count -> mean weight per midpoint
