#!/usr/bin/env python3.12
"""
test_neural

Module created to test the tensor graph, dense layers, optimizers and
checkpoints.

Author: transit-control maintainers

Date: 17.10.2026
"""

import numpy as np
import pytest

from transit_control_app.src.errors import CheckpointError, NonFiniteGradientError, StaleCacheError
from transit_control_app.src.neural import (
    AttentionSpec,
    NetworkSpec,
    ParameterSet,
    Tensor,
    adam_step,
    attention_aggregate,
    copy_to_target,
    cosine_features,
    grad,
    gradient_check,
    init_attention,
    init_mlp,
    load_checkpoint,
    mlp_backward,
    mlp_forward,
    no_grad,
    pad_events,
    save_checkpoint,
)
from transit_control_app.src.neural.tensor import gather_sorted, softmax


@pytest.fixture()
def tanh_net() -> tuple[ParameterSet, NetworkSpec]:
    spec = NetworkSpec((3, 5, 2), ("tanh", "linear"))
    return init_mlp(ParameterSet("net"), spec, np.random.default_rng(0)), spec

#### tensor graph ####

def test_square_gradient() -> None:
    x = Tensor([1.0, 2.0, 3.0], requires_grad=True)
    (dx,) = grad((x * x).sum(), [x])

    assert dx.data == pytest.approx([2.0, 4.0, 6.0])

def test_unused_input_gets_zero_gradient() -> None:
    x = Tensor([1.0, 2.0], requires_grad=True)
    y = Tensor([5.0], requires_grad=True)
    _, dy = grad(x.sum(), [x, y])

    assert dy.data == pytest.approx([0.0])

def test_no_grad_records_nothing() -> None:
    x = Tensor([1.0], requires_grad=True)
    with no_grad():
        y = x * 2.0

    assert not y.requires_grad

def test_masked_softmax() -> None:
    logits = Tensor(np.array([[1.0, 2.0, 3.0], [1.0, 2.0, 3.0]]))
    mask = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 0.0]])
    probs = softmax(logits, axis=-1, mask=mask).data

    assert probs[0].sum() == pytest.approx(1.0)
    assert probs[0, 2] == 0.0
    assert probs[1] == pytest.approx([0.0, 0.0, 0.0])

def test_sort_gradient_follows_permutation() -> None:
    a = Tensor([3.0, 1.0, 2.0], requires_grad=True)
    ordered = gather_sorted(a)
    (da,) = grad((ordered * np.array([1.0, 2.0, 3.0])).sum(), [a])

    assert ordered.data == pytest.approx([1.0, 2.0, 3.0])
    assert da.data == pytest.approx([3.0, 1.0, 2.0])

#### dense layers ####

def test_mlp_backward_matches_finite_differences(tanh_net: tuple[ParameterSet, NetworkSpec]) -> None:
    params, spec = tanh_net
    x = np.random.default_rng(1).normal(size=(4, 3))
    _, cache = mlp_forward(params, spec, x)
    grads, dx = mlp_backward(cache, np.ones((4, 2)))

    error = gradient_check(lambda: float(mlp_forward(params, spec, x)[0].sum()), grads, params)

    assert error < 1e-5
    assert dx.shape == (4, 3)

def test_backward_after_parameter_change(tanh_net: tuple[ParameterSet, NetworkSpec]) -> None:
    params, spec = tanh_net
    _, cache = mlp_forward(params, spec, np.zeros((1, 3)))
    params.set("layer0.b", np.ones(5))

    with pytest.raises(StaleCacheError):
        mlp_backward(cache, np.ones((1, 2)))

def test_network_spec_checks_activations() -> None:
    with pytest.raises(ValueError):
        NetworkSpec((3, 2), ("softplus",))

def test_cosine_features() -> None:
    features = cosine_features(np.array([0.0, 0.5]), 3)

    assert features.shape == (2, 3)
    assert features[1] == pytest.approx([1.0, 0.0, -1.0], abs=1e-12)
    with pytest.raises(ValueError):
        cosine_features(np.array([1.5]), 3)

def test_pad_events() -> None:
    padded, mask = pad_events([np.ones((2, 4)), np.zeros((0, 4))], 4)

    assert padded.shape == (2, 2, 4)
    assert mask.tolist() == [[1.0, 1.0], [0.0, 0.0]]

def test_attention_without_events_uses_null_context() -> None:
    spec = AttentionSpec(ego_dim=3, event_dim=2, dim=4)
    params = init_attention(ParameterSet("attn"), spec, np.random.default_rng(0))
    events, mask = pad_events([np.zeros((0, 2))], 2)

    out, weights = attention_aggregate(params.constants(), spec, np.ones((1, 3)), events, mask)

    expected = params["attn.null"] @ params["attn.out.w"] + params["attn.out.b"]
    assert out.data[0] == pytest.approx(expected)
    assert weights.sum() == 0.0

def test_duplicate_events_share_attention() -> None:
    spec = AttentionSpec(ego_dim=3, event_dim=2, dim=4)
    params = init_attention(ParameterSet("attn"), spec, np.random.default_rng(2))
    nodes = np.array([[0.3, -1.2], [0.9, 0.4], [0.3, -1.2]])
    events, mask = pad_events([nodes], 2)

    _, weights = attention_aggregate(params.constants(), spec, np.array([[0.5, 1.0, -0.2]]), events, mask)

    assert weights[0, 0] == pytest.approx(weights[0, 2])
    assert weights[0].sum() == pytest.approx(1.0)

#### optimizers ####

def test_first_adam_step_moves_by_learning_rate() -> None:
    params = ParameterSet("p")
    params.add("w", np.array([1.0, -1.0]))
    adam_step(params, {"w": np.array([0.5, -2.0])}, lr=0.01)

    assert params["w"] == pytest.approx([0.99, -0.99], abs=1e-6)
    assert params.step == 1

def test_adam_rejects_non_finite_gradient() -> None:
    params = ParameterSet("p")
    params.add("w", np.zeros(2))
    with pytest.raises(NonFiniteGradientError):
        adam_step(params, {"w": np.array([np.nan, 0.0])})

def test_target_mix() -> None:
    source, target = ParameterSet("src"), ParameterSet("tgt")
    source.add("w", np.full(2, 4.0))
    target.add("w", np.zeros(2))
    copy_to_target(source, target, mix=0.25)

    assert target["w"] == pytest.approx([1.0, 1.0])

#### checkpoints ####

def test_checkpoint_restores_values(tanh_net: tuple[ParameterSet, NetworkSpec], tmp_path) -> None:
    params, _ = tanh_net
    path = str(tmp_path / "checkpoint.json")
    save_checkpoint(path, {"actor": params}, step=12, extra={"route": "desk"})

    sets, step, extra = load_checkpoint(path)

    assert step == 12
    assert extra == {"route": "desk"}
    assert sets["actor"].shapes == params.shapes
    for key in params:
        assert np.array_equal(sets["actor"][key], params[key])

def test_truncated_checkpoint(tanh_net: tuple[ParameterSet, NetworkSpec], tmp_path) -> None:
    params, _ = tanh_net
    path = str(tmp_path / "checkpoint.json")
    save_checkpoint(path, {"actor": params}, step=1)
    with open(str(tmp_path / "checkpoint.bin"), "r+b") as file:
        file.truncate(16)

    with pytest.raises(CheckpointError):
        load_checkpoint(path)

def test_missing_checkpoint(tmp_path) -> None:
    with pytest.raises(CheckpointError):
        load_checkpoint(str(tmp_path / "absent.json"))
