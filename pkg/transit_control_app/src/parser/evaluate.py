#!/usr/bin/env python3.12
"""
evaluate

Parser for eval arguments

Author: transit-control maintainers

Date: 17.10.2026
"""

from argparse import ArgumentTypeError, _SubParsersAction
from typing import Any

import transit_control_app.src.config.base as config
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.errors import ScenarioError
from transit_control_app.src.scenario.spec import AnomalyKind, AnomalySpec


def anomaly_argument(text: str) -> AnomalySpec:
    """Parse 'kind:key=value,...', e.g. 'interruption:factor=0.1,start=3600,end=5400,targets=1+2'."""
    kind, _, rest = text.partition(":")
    data: dict[str, Any] = {"kind": kind.strip()}
    for item in filter(None, rest.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise ArgumentTypeError(f"Anomaly field '{item}' must look like key=value")
        key = key.strip()
        if key == "targets":
            data[key] = [int(t) for t in value.split("+") if t]
        else:
            data[key] = value
    try:
        return AnomalySpec.from_dict(data)
    except (ScenarioError, ValueError) as e:
        raise ArgumentTypeError(f"Invalid anomaly '{text}' ({AnomalyKind.str()}): {e}") from e


# eval
def add_eval_parser(subparsers: _SubParsersAction) -> None:
    eval_parser = subparsers.add_parser(
        "eval", description="Evaluate a policy against no control", help="Evaluate a policy"
    )

    eval_parser.add_argument("-r", "--route", required=True, help="Run document describing the route")
    eval_parser.add_argument("-k", "--checkpoint", help="Checkpoint of a trained agent")
    eval_parser.add_argument(
        "-a",
        "--agent",
        choices=AgentVariant.list(),
        help="Agent variant; rule agents need no checkpoint",
    )
    eval_parser.add_argument("--sigma-d", type=float, default=config.fixed_sigma_d, help="Demand noise")
    eval_parser.add_argument("--sigma-s", type=float, default=config.fixed_sigma_s, help="Speed noise")
    eval_parser.add_argument("-n", "--seeds", type=int, default=config.eval_seeds, help="Paired seeds")
    eval_parser.add_argument("-s", "--seed", type=int, default=0, help="Root seed of the evaluation seeds")
    eval_parser.add_argument(
        "--anomaly",
        type=anomaly_argument,
        action="append",
        default=[],
        dest="anomalies",
        metavar="SPEC",
        help="kind:key=value,... with kind one of " + AnomalyKind.str(),
    )
    eval_parser.add_argument("-o", "--out", default="runs/eval", help="Output directory")
