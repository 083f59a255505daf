from __future__ import annotations

import json
import subprocess
from pathlib import Path
from typing import Callable

import pandas as pd
import pytest

SMALL_AGENT = [
    "--set", "agent.hidden=[8, 8]",
    "--set", "agent.n_quantiles=4",
    "--set", "agent.n_target_quantiles=4",
    "--set", "agent.n_cos=8",
    "--set", "agent.attention_dim=4",
    "--set", "trainer.buffer_threshold=32",
    "--set", "trainer.batch_size=16",
]


@pytest.fixture(scope="module")
def trained(run_cli: Callable[..., subprocess.CompletedProcess[str]], desk_route: str,
            tmp_path_factory: pytest.TempPathFactory) -> Path:
    out = tmp_path_factory.mktemp("train")
    run_cli("train", "-c", desk_route, "-e", "2", "-s", "3", "-o", str(out), *SMALL_AGENT)
    return out


@pytest.mark.scenario
def test_train_writes_run_directory(trained: Path) -> None:
    for name in ("checkpoint.json", "curves.csv", "manifest.json", "meta_weights_1.json", "meta_weights_2.json"):
        assert (trained / name).exists()

    curves = pd.read_csv(trained / "curves.csv")
    assert curves["episode"].tolist() == [1, 2]
    manifest = json.loads((trained / "manifest.json").read_text())
    assert manifest["config"]["trainer"]["seed"] == 3
    assert "desk_route.json" in manifest["fixtures"]


@pytest.mark.scenario
def test_eval_of_trained_checkpoint(run_cli: Callable[..., subprocess.CompletedProcess[str]], trained: Path,
                                    desk_route: str, read_report: Callable[[Path], pd.DataFrame],
                                    tmp_path: Path) -> None:
    out = tmp_path / "eval"
    run_cli("eval", "-r", desk_route, "-k", str(trained / "checkpoint.json"), "-n", "2", "-o", str(out))

    report = read_report(out)
    assert report["agent"].tolist() == ["iqnc-m"]
    assert report["seed_count"].tolist() == [2]
    assert report["aht_s"].iloc[0] >= 0
    assert list(out.glob("*/*/trajectory.csv"))


@pytest.mark.scenario
def test_eval_recovery_under_interruption(run_cli: Callable[..., subprocess.CompletedProcess[str]], desk_route: str,
                                          tmp_path: Path) -> None:
    out = tmp_path / "anomaly"
    result = run_cli("eval", "-r", desk_route, "-a", "fh", "-n", "2", "-o", str(out),
                     "--anomaly", "interruption:factor=0.1,start=3600,end=5400,targets=1")

    recovery = pd.read_csv(out / "recovery.csv")
    assert recovery.columns.tolist() == ["seed_index", "treated_s", "baseline_s"]
    assert len(recovery) == 2
    assert "Recovered faster than no control" in result.stdout


@pytest.mark.scenario
def test_plots_are_deterministic(run_cli: Callable[..., subprocess.CompletedProcess[str]], trained: Path,
                                 desk_route: str, tmp_path: Path) -> None:
    eval_dir = tmp_path / "eval"
    run_cli("eval", "-r", desk_route, "-a", "nc", "-n", "1", "-o", str(eval_dir))
    (trajectory,) = eval_dir.glob("nc/*/trajectory.csv")

    figures = []
    for name in ("first.svg", "second.svg"):
        run_cli("plot", "-l", str(trajectory), "-o", str(tmp_path / name), "-t", "desk")
        figures.append((tmp_path / name).read_bytes())
    assert figures[0] == figures[1]

    run_cli("plot", "-l", str(trained / "meta_weights_2.json"), "-o", str(tmp_path / "meta.svg"))
    run_cli("plot", "--wang", "0.8", "--wang", "-0.8", "-o", str(tmp_path / "wang.svg"))
    assert (tmp_path / "meta.svg").read_bytes().count(b"<svg") == 1
    assert (tmp_path / "wang.svg").exists()


@pytest.mark.scenario
def test_sweep_emits_full_grid(run_cli: Callable[..., subprocess.CompletedProcess[str]], desk_sweep: str,
                               read_report: Callable[[Path], pd.DataFrame], tmp_path: Path) -> None:
    out = tmp_path / "sweep"
    run_cli("sweep", "-c", desk_sweep, "-n", "1", "-o", str(out), *SMALL_AGENT[:8])

    report = read_report(out)
    # sigma_s grid of two cells plus the extra sigma_d cell, for three agents
    assert len(report) == 9
    assert set(report["agent"]) == {"nc", "fh", "iqnc-n"}
    assert report.groupby("agent").size().tolist() == [3, 3, 3]
    nc = report[report["agent"] == "nc"]
    assert (nc["d_awt_s"].fillna(0.0) == 0.0).all()
