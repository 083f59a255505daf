from __future__ import annotations

import json
import subprocess
from pathlib import Path
from typing import Callable

import numpy as np
import pandas as pd
import pytest

EPISODES = "300"
EVAL_SEEDS = "20"
INTERRUPTION = "interruption:factor=0.1,start=3600,end=5400,targets=1+2"

CliRunner = Callable[..., subprocess.CompletedProcess[str]]


def _train(run_cli: CliRunner, desk_route: str, workdir: Path, variant: str) -> Path:
    out = workdir / f"train-{variant}"
    if not (out / "checkpoint.json").exists():
        run_cli("train", "-c", desk_route, "-e", EPISODES, "-o", str(out), "--set", f"agent.variant={variant}")
    return out


@pytest.fixture(scope="module")
def iqnc_n(require_slow: None, run_cli: CliRunner, desk_route: str, slow_workdir: Path) -> Path:
    del require_slow
    return _train(run_cli, desk_route, slow_workdir, "iqnc-n")


@pytest.fixture(scope="module")
def iqnc_m(require_slow: None, run_cli: CliRunner, desk_route: str, slow_workdir: Path) -> Path:
    del require_slow
    return _train(run_cli, desk_route, slow_workdir, "iqnc-m")


def _evaluate(run_cli: CliRunner, desk_route: str, checkpoint_dir: Path, out: Path, *extra: str) -> pd.Series:
    run_cli("eval", "-r", desk_route, "-k", str(checkpoint_dir / "checkpoint.json"), "-n", EVAL_SEEDS,
            "--sigma-d", "1", "--sigma-s", "0.1", "-o", str(out), *extra)
    return pd.read_csv(out / "report.csv").iloc[0]


@pytest.mark.scenario
@pytest.mark.slow
def test_learned_holding_beats_no_control(run_cli: CliRunner, desk_route: str, iqnc_n: Path, iqnc_m: Path,
                                          tmp_path: Path) -> None:
    neutral = _evaluate(run_cli, desk_route, iqnc_n, tmp_path / "iqnc-n")
    meta = _evaluate(run_cli, desk_route, iqnc_m, tmp_path / "iqnc-m")

    assert neutral["d_awt_s"] < 0
    assert neutral["d_aod"] < 0
    assert meta["d_awt_s"] <= neutral["d_awt_s"]


@pytest.mark.scenario
@pytest.mark.slow
def test_faster_recovery_after_interruption(run_cli: CliRunner, desk_route: str, iqnc_m: Path,
                                            tmp_path: Path) -> None:
    out = tmp_path / "recovery"
    _evaluate(run_cli, desk_route, iqnc_m, out, "--anomaly", INTERRUPTION)

    recovery = pd.read_csv(out / "recovery.csv")
    treated, baseline = recovery["treated_s"], recovery["baseline_s"]
    faster = (treated.notna() & (baseline.isna() | (treated < baseline))).sum()
    assert faster >= 15


@pytest.mark.scenario
@pytest.mark.slow
def test_meta_weights_favour_sparse_graphs(iqnc_m: Path) -> None:
    snapshot = json.loads((iqnc_m / f"meta_weights_{EPISODES}.json").read_text())
    weights = {int(k): np.asarray(v) for k, v in snapshot.items()}
    top = max(1, len(next(iter(weights.values()))) // 4)

    dense = [w[-top:].mean() for n, w in weights.items() if n >= 4]
    assert 1 in weights and dense
    assert weights[1][-top:].mean() > np.mean(dense)
