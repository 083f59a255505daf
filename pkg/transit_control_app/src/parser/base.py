#!/usr/bin/env python3.12
"""
base

Base for parser

Author: transit-control maintainers

Date: 17.10.2026
"""

from argparse import ArgumentParser, Namespace
from typing import Sequence

from transit_control_app.src.parser.evaluate import add_eval_parser
from transit_control_app.src.parser.plot import add_plot_parser
from transit_control_app.src.parser.selftest import add_selftest_parser
from transit_control_app.src.parser.sweep import add_sweep_parser
from transit_control_app.src.parser.train import add_train_parser


def parse(args: Sequence[str]) -> Namespace:
    parser = ArgumentParser(prog="transit-control", description="Bus holding control experiments")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at debug level")
    subparsers = parser.add_subparsers(dest="command", metavar="", required=True)

    add_train_parser(subparsers)
    add_eval_parser(subparsers)
    add_sweep_parser(subparsers)
    add_plot_parser(subparsers)
    add_selftest_parser(subparsers)

    return parser.parse_args(args)
