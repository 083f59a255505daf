#!/usr/bin/env python3.12
"""
plot

Parser for plot arguments

Author: transit-control maintainers

Date: 17.10.2026
"""

from argparse import _SubParsersAction


# plot
def add_plot_parser(subparsers: _SubParsersAction) -> None:
    plot_parser = subparsers.add_parser(
        "plot", description="Render an SVG figure", help="Render an SVG figure"
    )

    source = plot_parser.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "-l", "--log", help="trajectory.csv for a time-space diagram or meta_weights_<episode>.json"
    )
    source.add_argument(
        "-w",
        "--wang",
        type=float,
        action="append",
        dest="betas",
        metavar="BETA",
        help="Plot Wang distortion weights for BETA (repeatable)",
    )
    plot_parser.add_argument("-o", "--out", required=True, help="Output SVG file")
    plot_parser.add_argument("-t", "--title", default="", help="Figure title")
