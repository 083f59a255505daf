#!/usr/bin/env python3.12
"""
test_cli

Module created to test argument parsing and command dispatch.

Author: transit-control maintainers

Date: 17.10.2026
"""

from argparse import ArgumentTypeError

import pandas as pd
import pytest

import transit_control_app.src.config.base as config
from transit_control_app.src.argument_parsing import error_line, handle_arguments
from transit_control_app.src.commands.registry import CommandRegistry
from transit_control_app.src.config.base import fixture_path
from transit_control_app.src.parser.base import parse
from transit_control_app.src.parser.evaluate import anomaly_argument
from transit_control_app.src.parser.train import override_argument
from transit_control_app.src.scenario.spec import AnomalyKind

#### parsing ####

def test_command_is_required() -> None:
    with pytest.raises(SystemExit) as error:
        parse([])
    assert error.value.code == 2

def test_eval_needs_route() -> None:
    with pytest.raises(SystemExit) as error:
        parse(["eval", "-a", "nc"])
    assert error.value.code == 2

def test_train_arguments() -> None:
    arguments = parse(["train", "-c", "run.yaml", "-s", "3", "--set", "agent.hidden=[4, 4]"])

    assert arguments.command == "train"
    assert arguments.config_path == "run.yaml"
    assert arguments.seed == 3
    assert arguments.episodes is None
    assert arguments.overrides == [("agent.hidden", [4, 4])]

def test_override_argument() -> None:
    assert override_argument("trainer.buffer_threshold=inf") == ("trainer.buffer_threshold", "inf")
    assert override_argument("agent.lr_actor=0.001") == ("agent.lr_actor", 0.001)
    with pytest.raises(ArgumentTypeError):
        override_argument("agent.lr_actor")

def test_anomaly_argument() -> None:
    spec = anomaly_argument("interruption:factor=0.1,start=3600,end=5400,targets=1+2")

    assert spec.kind == AnomalyKind.INTERRUPTION
    assert spec.window == (3600.0, 5400.0)
    assert spec.targets == (1, 2)
    assert spec.factor == pytest.approx(0.1)

@pytest.mark.parametrize("text", ["meteor:start=0", "interruption:factor", "interruption:factor=2,targets=1"])
def test_bad_anomaly_argument(text: str) -> None:
    with pytest.raises(ArgumentTypeError):
        anomaly_argument(text)

def test_selftest_only_accepts_known_oracles() -> None:
    assert parse(["selftest", "--only", "wang-weights"]).names == ["wang-weights"]
    with pytest.raises(SystemExit):
        parse(["selftest", "--only", "unknown"])

#### dispatch ####

def test_error_line_is_one_line() -> None:
    line = error_line("eval", ValueError('bad "value"\nsecond'))

    assert line == 'ERROR: command=eval type=ValueError message="bad \\"value\\" second"'

def test_unknown_command() -> None:
    with pytest.raises(ValueError):
        CommandRegistry().execute("serve")

def test_missing_document_fails_with_error_line(tmp_path, capsys) -> None:
    code = handle_arguments(["eval", "-r", str(tmp_path / "absent.json"), "-a", "nc", "-o", str(tmp_path)])

    assert code == 1
    assert capsys.readouterr().err.startswith("ERROR: command=eval type=ConfigError")

def test_learned_agent_needs_checkpoint(tmp_path, capsys) -> None:
    code = handle_arguments(["eval", "-r", fixture_path("desk_route.json"), "-a", "iqnc-n", "-o", str(tmp_path)])

    assert code == 1
    assert "--checkpoint" in capsys.readouterr().err

def test_eval_no_control(tmp_path, capsys) -> None:
    out = tmp_path / "eval"
    code = handle_arguments(["eval", "-r", fixture_path("desk_route.json"), "-a", "nc", "-n", "1", "-o", str(out)])

    assert code == 0
    frame = pd.read_csv(out / config.report_name)
    assert frame["agent"].tolist() == ["nc"]
    assert frame["aht_s"].tolist() == [0.0]
    assert (out / config.manifest_name).exists()
    assert "nc" in capsys.readouterr().out

def test_plot_wang_weights(tmp_path) -> None:
    out = tmp_path / "figures" / "wang.svg"

    assert handle_arguments(["plot", "--wang", "0.8", "--wang", "-0.8", "-o", str(out)]) == 0
    assert out.exists()

def test_selftest_single_oracle(capsys) -> None:
    assert handle_arguments(["selftest", "--only", "quantile-huber"]) == 0
    assert "1/1 oracles passed" in capsys.readouterr().out
