#!/usr/bin/env python3.12
"""
registry

Command registry for routing commands to appropriate handlers.

Author: transit-control maintainers

Date: 17.10.2026
"""

from typing import Any

from transit_control_app.src.commands.base import BaseCommand
from transit_control_app.src.commands.experiment import ExperimentCommands
from transit_control_app.src.commands.plot import PlotCommands
from transit_control_app.src.commands.selftest import SelftestCommands


class CommandRegistry:
    """Registry for routing commands to appropriate handlers."""

    def __init__(self) -> None:
        experiments = ExperimentCommands()
        self.commands: dict[str, BaseCommand] = {
            "train": experiments,
            "eval": experiments,
            "sweep": experiments,
            "plot": PlotCommands(),
            "selftest": SelftestCommands(),
        }

    def execute(self, command: str, *args: Any, **kwargs: Any) -> None:
        """Execute a command by routing it to the appropriate handler."""
        if command not in self.commands:
            raise ValueError(f"Unknown command: {command}")

        handler = self.commands[command]
        handler.execute(command, *args, **kwargs)
