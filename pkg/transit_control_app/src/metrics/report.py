#!/usr/bin/env python3.12
"""
report

Episode metrics, paired comparisons and their CSV form.

Author: transit-control maintainers

Date: 17.10.2026
"""

import dataclasses
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
import pandas as pd

from transit_control_app.src.env.environment import EpisodeLog
from transit_control_app.src.env.reward import headway_cv2
from transit_control_app.src.types import CV2Sample

REPORT_COLUMNS = [
    "agent", "route", "sigma_d", "sigma_s", "anomaly", "seed_count",
    "aht_s", "awt_s", "ajt_s", "att_s", "aod", "d_awt_s", "d_att_s", "d_aod", "cv2",
]
METRIC_FIELDS = ("aht_s", "awt_s", "ajt_s", "att_s", "aod", "cv2")
DELTA_FIELDS = {"d_awt_s": "awt_s", "d_att_s": "att_s", "d_aod": "aod"}


@dataclass
class MetricsReport:
    """Averaged metrics of one agent in one scenario cell; undefined values are None."""
    aht_s: float | None = None
    awt_s: float | None = None
    ajt_s: float | None = None
    att_s: float | None = None
    aod: float | None = None
    cv2: float | None = None
    d_awt_s: float | None = None
    d_att_s: float | None = None
    d_aod: float | None = None
    agent: str = ""
    route: str = ""
    sigma_d: float = 0.0
    sigma_s: float = 0.0
    anomaly: str = ""
    seed_count: int = 1

    def label(self, **changes: Any) -> "MetricsReport":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        return {column: getattr(self, column) for column in REPORT_COLUMNS}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MetricsReport":
        def number(value: Any) -> float | None:
            if value is None or value == "":
                return None
            value = float(value)
            return None if math.isnan(value) else value

        return cls(
            agent=str(data.get("agent", "")),
            route=str(data.get("route", "")),
            sigma_d=float(data.get("sigma_d", 0.0)),
            sigma_s=float(data.get("sigma_s", 0.0)),
            anomaly=str(data.get("anomaly", "") or ""),
            seed_count=int(data.get("seed_count", 1)),
            **{name: number(data.get(name)) for name in (*METRIC_FIELDS, *DELTA_FIELDS)},
        )


def cv2(headways: Sequence[float], expected_headway: float) -> float:
    if expected_headway <= 0:
        raise ValueError("Expected headway must be strictly positive")
    return headway_cv2(list(headways), expected_headway)


def _mean(values: Sequence[float]) -> float | None:
    return float(np.mean(values)) if len(values) else None


def occupancy_dispersion(samples: Sequence[int]) -> float | None:
    """Population variance-to-mean ratio of departure occupancies."""
    if not samples:
        return None
    mean = float(np.mean(samples))
    return float(np.var(samples) / mean) if mean > 0 else 0.0


def compute_metrics(log: EpisodeLog) -> MetricsReport:
    boarded = [p for p in log.passengers if p.board_time is not None]
    journeys = [p for p in boarded if p.alight_time is not None]
    trips = [end - start for start, end in log.bus_times if start is not None and end is not None]

    return MetricsReport(
        aht_s=float(np.mean(log.holds)) if log.holds else 0.0,
        awt_s=_mean([p.board_time - p.arrival_time for p in boarded]),  # type: ignore[operator]
        ajt_s=_mean([p.alight_time - p.board_time for p in journeys]),  # type: ignore[operator]
        att_s=_mean(trips),
        aod=occupancy_dispersion(log.departure_occupancy),
        cv2=_mean([value for _, value in log.cv2_samples]),
        route=log.route_name,
        sigma_d=log.draw.sigma_d,
        sigma_s=log.draw.sigma_s,
        anomaly=";".join(a.kind.value for a in log.anomalies),
    )


def aggregate(reports: Sequence[MetricsReport]) -> MetricsReport:
    """Mean of every defined metric over seeds; labels come from the first report."""
    if not reports:
        raise ValueError("Nothing to aggregate")
    values: dict[str, float | None] = {}
    for name in (*METRIC_FIELDS, *DELTA_FIELDS):
        defined = [getattr(r, name) for r in reports if getattr(r, name) is not None]
        values[name] = _mean(defined)
    return dataclasses.replace(reports[0], seed_count=len(reports), **values)


def paired_deltas(treated: Sequence[MetricsReport], baseline: Sequence[MetricsReport]) -> MetricsReport:
    """Aggregate of `treated` with mean per-seed differences to `baseline` in the delta columns."""
    if len(treated) != len(baseline):
        raise ValueError(f"Paired comparison needs equal seed counts, got {len(treated)} and {len(baseline)}")
    report = aggregate(treated)
    for delta, metric in DELTA_FIELDS.items():
        diffs = [
            getattr(t, metric) - getattr(b, metric)
            for t, b in zip(treated, baseline)
            if getattr(t, metric) is not None and getattr(b, metric) is not None
        ]
        setattr(report, delta, _mean(diffs))
    return report


def recovery_time(cv2_samples: Sequence[CV2Sample], window: tuple[float, float]) -> float | None:
    """Seconds after the window until fleet CV2 is back below twice its pre-window mean."""
    start, end = window
    before = [value for t, value in cv2_samples if t < start]
    if not before:
        return None
    baseline = float(np.mean(before))
    for t, value in cv2_samples:
        if t >= end and (value < 2.0 * baseline or value <= baseline):
            return t - end
    return None


def write_report_csv(reports: Sequence[MetricsReport], path: str) -> None:
    frame = pd.DataFrame([r.to_dict() for r in reports], columns=REPORT_COLUMNS)
    frame.to_csv(path, index=False)


def read_report_csv(path: str) -> list[MetricsReport]:
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = [c for c in REPORT_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError(f"Report {path} lacks columns: {', '.join(missing)}")
    return [MetricsReport.from_dict(row) for row in frame.to_dict(orient="records")]
