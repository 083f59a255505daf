from __future__ import annotations

import subprocess
from typing import Callable

import pytest


@pytest.mark.smoke
def test_help_lists_commands(run_cli: Callable[..., subprocess.CompletedProcess[str]]) -> None:
    result = run_cli("--help")

    for command in ("train", "eval", "sweep", "plot", "selftest"):
        assert command in result.stdout


@pytest.mark.smoke
def test_parse_error_exits_two(run_cli: Callable[..., subprocess.CompletedProcess[str]]) -> None:
    result = run_cli("eval", "--seeds", "many", check=False)

    assert result.returncode == 2
    assert "usage:" in result.stderr


@pytest.mark.smoke
def test_failure_prints_one_error_line(run_cli: Callable[..., subprocess.CompletedProcess[str]], tmp_path) -> None:
    result = run_cli("train", "-c", str(tmp_path / "absent.yaml"), "-o", str(tmp_path), check=False)

    assert result.returncode == 1
    errors = [line for line in result.stderr.splitlines() if line.startswith("ERROR:")]
    assert len(errors) == 1
    assert "command=train type=ConfigError" in errors[0]


@pytest.mark.smoke
def test_fast_oracles(run_cli: Callable[..., subprocess.CompletedProcess[str]]) -> None:
    result = run_cli("selftest", "--only", "quantile-huber", "--only", "wang-weights", timeout=10)

    assert "2/2 oracles passed" in result.stdout
