#!/usr/bin/env python3.12
"""
argument_parsing

Module to define the transit-control CLI and to parse command line arguments.

Author: transit-control maintainers

Date: 17.10.2026
"""

import logging
import sys

from transit_control_app.src.commands.registry import CommandRegistry
from transit_control_app.src.errors import TransitControlError
from transit_control_app.src.parser.base import parse

LOG_FORMAT = "%(levelname)s: %(message)s"


def error_line(command: str, error: BaseException) -> str:
    """Single machine-readable line describing a failed command."""
    message = str(error).replace("\\", "\\\\").replace('"', '\\"').replace("\n", " ")
    return f'ERROR: command={command} type={type(error).__name__} message="{message}"'


def handle_arguments(argv: list[str]) -> int:
    """Handle command line arguments and return the process exit code."""
    arguments = parse(argv)
    logging.basicConfig(level=logging.DEBUG if arguments.verbose else logging.INFO, format=LOG_FORMAT)
    registry = CommandRegistry()

    command_args = {k: v for k, v in vars(arguments).items() if k not in ("command", "verbose")}
    try:
        registry.execute(arguments.command, **command_args)
    except (TransitControlError, ValueError, OSError) as e:
        print(error_line(arguments.command, e), file=sys.stderr)
        return 1
    return 0
