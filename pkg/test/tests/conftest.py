from __future__ import annotations

import os
import subprocess
import sys
from pathlib import Path
from typing import Callable

import pandas as pd
import pytest

CliRunner = Callable[..., subprocess.CompletedProcess[str]]


def _flag(name: str) -> bool:
    return os.environ.get(name, "0") == "1"


@pytest.fixture(scope="session")
def repo_root() -> Path:
    return Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def fixtures_dir(repo_root: Path) -> Path:
    return repo_root / "transit_control_app" / "fixtures"


@pytest.fixture(scope="session")
def desk_route(fixtures_dir: Path) -> str:
    return str(fixtures_dir / "desk_route.json")


@pytest.fixture(scope="session")
def desk_sweep(fixtures_dir: Path) -> str:
    return str(fixtures_dir / "desk_sweep.yaml")


@pytest.fixture(scope="session")
def run_cli(repo_root: Path) -> CliRunner:
    env = {**os.environ, "PYTHONPATH": str(repo_root)}

    def _run(*args: str, check: bool = True, timeout: float | None = None) -> subprocess.CompletedProcess[str]:
        result = subprocess.run(
            [sys.executable, "-m", "transit_control_app.main", *args],
            cwd=repo_root,
            env=env,
            text=True,
            capture_output=True,
            timeout=timeout,
        )
        if check and result.returncode != 0:
            raise AssertionError(
                f"transit-control {' '.join(args)} exited {result.returncode}\n{result.stdout}\n{result.stderr}"
            )
        return result

    return _run


@pytest.fixture(scope="session")
def read_report() -> Callable[[Path], pd.DataFrame]:
    def _read(out_dir: Path) -> pd.DataFrame:
        return pd.read_csv(out_dir / "report.csv")

    return _read


@pytest.fixture(scope="session")
def require_slow() -> None:
    if not _flag("QA_SLOW"):
        pytest.skip("long training runs need QA_SLOW=1")


@pytest.fixture(scope="session")
def slow_workdir(tmp_path_factory: pytest.TempPathFactory) -> Path:
    configured = os.environ.get("QA_SLOW_WORKDIR", "")
    if configured:
        path = Path(configured)
        path.mkdir(parents=True, exist_ok=True)
        return path
    return tmp_path_factory.mktemp("slow")
