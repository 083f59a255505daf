#!/usr/bin/env python3.12
"""
train

Parser for train arguments

Author: transit-control maintainers

Date: 17.10.2026
"""

from argparse import ArgumentTypeError, _SubParsersAction
from typing import Any

from yaml import YAMLError, safe_load


def override_argument(text: str) -> tuple[str, Any]:
    """'section.key=value' with the value read as YAML, so numbers and lists keep their type."""
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise ArgumentTypeError(f"Override '{text}' must look like section.key=value")
    try:
        return key.strip(), safe_load(raw)
    except YAMLError as e:
        raise ArgumentTypeError(f"Override '{text}' has an unreadable value: {e}") from e


# train
def add_train_parser(subparsers: _SubParsersAction) -> None:
    train_parser = subparsers.add_parser(
        "train", description="Train a holding policy", help="Train a holding policy"
    )

    train_parser.add_argument("-c", "--config", required=True, dest="config_path", help="Run document (JSON or YAML)")
    train_parser.add_argument("-s", "--seed", type=int, help="Trainer seed, overrides trainer.seed")
    train_parser.add_argument("-o", "--out", default="runs/train", help="Output directory")
    train_parser.add_argument("-e", "--episodes", type=int, help="Episode count, overrides trainer.episodes")
    train_parser.add_argument(
        "--set",
        type=override_argument,
        action="append",
        default=[],
        dest="overrides",
        metavar="KEY=VALUE",
        help="Override any document value, e.g. agent.lr_actor=0.001",
    )
