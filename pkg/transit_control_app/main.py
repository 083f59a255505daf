#!/usr/bin/env python3.12
"""
Main module for the transit-control application.

Author: transit-control maintainers

Date: 17.10.2026
"""

import sys

from transit_control_app.src.argument_parsing import handle_arguments


def main() -> None:
    """Main entry point for the transit-control application."""
    sys.exit(handle_arguments(sys.argv[1:]))


if __name__ == "__main__":
    main()
