#!/usr/bin/env python3.12
"""
plot

Plot command handlers.

Author: transit-control maintainers

Date: 17.10.2026
"""

import json
from typing import Any, Callable, Sequence

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.distortion import wang_weights
from transit_control_app.src.agents.quantile import fraction_grid, midpoints
from transit_control_app.src.commands.base import BaseCommand
from transit_control_app.src.metrics.plot import render_timespace_svg, render_weights_svg
from transit_control_app.src.sim.trajectory import read_trajectory_csv


class PlotCommands(BaseCommand):
    """Handles figure rendering."""

    def plot(self, log: str | None, betas: Sequence[float] | None, out: str, title: str) -> None:
        """Render a time-space diagram, a meta-weight snapshot or Wang weight curves to SVG."""
        self.prepare_parent(out)
        if betas:
            taus = midpoints(fraction_grid(config.n_quantiles))
            curves = {f"beta={beta:g}": wang_weights(beta, taus).values.tolist() for beta in betas}
            render_weights_svg(curves, out, title)
        elif log is not None and log.endswith(".json"):
            with open(log, "r") as file:
                snapshot = json.load(file)
            if not isinstance(snapshot, dict):
                raise ValueError(f"{log} does not hold weights keyed by event count")
            render_weights_svg({int(k) if str(k).isdigit() else k: v for k, v in snapshot.items()}, out, title)
        elif log is not None:
            render_timespace_svg(read_trajectory_csv(log), out, title)
        else:
            raise ValueError("Nothing to plot, pass --log or --wang")
        print(f"Figure: {out}")

    def execute(self, command: str, *args: Any, **kwargs: Any) -> None:
        """Execute the specified plot command."""

        commands: dict[str, Callable[..., None]] = {
            "plot": self.plot,
        }

        if command not in commands:
            raise ValueError(f"Unknown plot command: {command}")

        commands[command](*args, **kwargs)
