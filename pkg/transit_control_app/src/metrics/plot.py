#!/usr/bin/env python3.12
"""
plot

SVG time-space diagrams and distortion-weight curves.

Figures are rendered off-screen with a fixed SVG hash salt and without a
date stamp, so identical inputs always give identical bytes.

Author: transit-control maintainers

Date: 17.10.2026
"""

import logging
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import numpy as np  # noqa: E402
from matplotlib import rc_context  # noqa: E402
from matplotlib.collections import LineCollection  # noqa: E402
from matplotlib.colors import Normalize  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from transit_control_app.src.agents.quantile import fraction_grid, midpoints  # noqa: E402
from transit_control_app.src.sim.trajectory import TrajectoryLog  # noqa: E402

logger = logging.getLogger(__name__)

COLOR_RAMP = "viridis"
SVG_STYLE = {"svg.hashsalt": "transit-control", "svg.fonttype": "path"}


def _save(figure: Figure, path: str) -> None:
    figure.savefig(path, format="svg", metadata={"Date": None})
    logger.debug("Wrote %s", path)


def timespace_segments(log: TrajectoryLog) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """Per-bus (N-1, 2, 2) line segments in (time, km) and the occupancy fraction on each."""
    segments = {}
    for bus_id in log.bus_ids():
        samples = np.array(log.series(bus_id))
        if len(samples) < 2:
            samples = np.vstack([samples, samples])
        points = samples[:, :2]
        segments[bus_id] = (np.stack([points[:-1], points[1:]], axis=1), samples[:-1, 2])
    return segments


def render_timespace_svg(log: TrajectoryLog, path: str, title: str = "") -> None:
    if not log.rows:
        raise ValueError("Trajectory log is empty")

    with rc_context(SVG_STYLE):
        figure = Figure(figsize=(10, 5))
        axes = figure.add_subplot()
        norm = Normalize(0.0, 1.0)
        collection = None
        for bus_id, (segments, occupancy) in timespace_segments(log).items():
            collection = LineCollection(list(segments), cmap=COLOR_RAMP, norm=norm, linewidths=1.2)
            collection.set_array(np.clip(occupancy, 0.0, 1.0))
            collection.set_gid(f"bus-{bus_id}")
            axes.add_collection(collection)

        times = [row[0] for row in log.rows]
        axes.set_xlim(min(times), max(times) + 1.0)
        axes.set_ylim(0.0, log.route_length)
        axes.set_xlabel("time (s)")
        axes.set_ylabel("position (km)")
        if title:
            axes.set_title(title)
        if collection is not None:
            figure.colorbar(collection, ax=axes, label="occupancy / capacity")
        _save(figure, path)


def render_weights_svg(weights: Mapping[int | str, Sequence[float]], path: str, title: str = "") -> None:
    """One line per key (event count or label) over the evenly spaced quantile midpoints."""
    if not weights:
        raise ValueError("No weights to plot")

    with rc_context(SVG_STYLE):
        figure = Figure(figsize=(6, 4))
        axes = figure.add_subplot()
        for key in sorted(weights, key=str):
            values = np.asarray(weights[key], dtype=np.float64)
            taus = midpoints(fraction_grid(len(values)))
            label = f"{key} events" if isinstance(key, int) else str(key)
            axes.plot(taus, values, marker=".", label=label)
        axes.set_xlabel("quantile midpoint")
        axes.set_ylabel("weight")
        axes.set_xlim(0.0, 1.0)
        if title:
            axes.set_title(title)
        axes.legend()
        _save(figure, path)
