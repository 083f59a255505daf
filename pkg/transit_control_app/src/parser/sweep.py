#!/usr/bin/env python3.12
"""
sweep

Parser for sweep arguments

Author: transit-control maintainers

Date: 17.10.2026
"""

from argparse import _SubParsersAction

from transit_control_app.src.parser.train import override_argument


# sweep
def add_sweep_parser(subparsers: _SubParsersAction) -> None:
    sweep_parser = subparsers.add_parser(
        "sweep",
        description="Evaluate several agents over the noise grid and transfer routes",
        help="Run the evaluation grid",
    )

    sweep_parser.add_argument("-c", "--config", required=True, dest="config_path", help="Run document with a sweep section")
    sweep_parser.add_argument("-o", "--out", default="runs/sweep", help="Output directory")
    sweep_parser.add_argument("-n", "--seeds", type=int, help="Paired seeds per cell, overrides trainer.eval_seeds")
    sweep_parser.add_argument(
        "--set",
        type=override_argument,
        action="append",
        default=[],
        dest="overrides",
        metavar="KEY=VALUE",
        help="Override any document value",
    )
