#!/usr/bin/env python3.12
"""
base

Base command class for all commands.

Author: transit-control maintainers

Date: 17.10.2026
"""

import os
from abc import ABC, abstractmethod
from typing import Any, Iterable, Sequence

import pandas as pd

from transit_control_app.src.metrics.report import MetricsReport

SUMMARY_COLUMNS = ["agent", "route", "sigma_d", "sigma_s", "anomaly", "aht_s", "d_awt_s", "d_att_s", "d_aod"]


class BaseCommand(ABC):
    """Base class for all commands."""

    def prepare_dir(self, path: str) -> str:
        """Create `path` if needed; permission problems surface as OSError."""
        os.makedirs(path, exist_ok=True)
        return path

    def prepare_parent(self, path: str) -> str:
        parent = os.path.dirname(os.path.abspath(path))
        os.makedirs(parent, exist_ok=True)
        return path

    def overrides(self, pairs: Iterable[tuple[str, Any]], **flags: Any) -> dict[str, Any]:
        """Merge `--set` pairs with dedicated flags; flags win and None flags are dropped."""
        merged = dict(pairs)
        merged.update({key: value for key, value in flags.items() if value is not None})
        return merged

    def print_reports(self, reports: Sequence[MetricsReport]) -> None:
        frame = pd.DataFrame([r.to_dict() for r in reports], columns=SUMMARY_COLUMNS)
        print(frame.to_string(index=False, float_format=lambda v: f"{v:.3f}", na_rep="n/a"))

    @abstractmethod
    def execute(self, *args: Any, **kwargs: Any) -> None:
        """Execute the command."""
        pass
