#!/usr/bin/env python3.12
"""
selftest

Self-test command handlers.

Author: transit-control maintainers

Date: 17.10.2026
"""

from typing import Any, Callable, Sequence

from transit_control_app.src.commands.base import BaseCommand
from transit_control_app.src.errors import OracleError
from transit_control_app.src.oracles import run_oracles


class SelftestCommands(BaseCommand):
    """Runs the known-answer oracles."""

    def selftest(self, names: Sequence[str] | None) -> None:
        results = run_oracles(names)
        failed = [r.name for r in results if not r.passed]
        print(f"{len(results) - len(failed)}/{len(results)} oracles passed")
        if failed:
            raise OracleError(f"Failed oracles: {', '.join(failed)}")

    def execute(self, command: str, *args: Any, **kwargs: Any) -> None:
        """Execute the specified self-test command."""

        commands: dict[str, Callable[..., None]] = {
            "selftest": self.selftest,
        }

        if command not in commands:
            raise ValueError(f"Unknown selftest command: {command}")

        commands[command](*args, **kwargs)
