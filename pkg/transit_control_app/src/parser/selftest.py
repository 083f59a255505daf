#!/usr/bin/env python3.12
"""
selftest

Parser for selftest arguments

Author: transit-control maintainers

Date: 17.10.2026
"""

from argparse import _SubParsersAction

from transit_control_app.src.oracles import ORACLES


# selftest
def add_selftest_parser(subparsers: _SubParsersAction) -> None:
    selftest_parser = subparsers.add_parser(
        "selftest", description="Run loss, gradient and simulator oracles", help="Run the oracles"
    )
    selftest_parser.add_argument(
        "--only",
        choices=list(ORACLES),
        action="append",
        dest="names",
        help="Run only this oracle (repeatable)",
    )
