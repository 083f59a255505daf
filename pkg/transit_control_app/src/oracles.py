#!/usr/bin/env python3.12
"""
oracles

Self-checks with known answers: hand-computed loss values, Wang weight
identities, finite-difference gradient checks of every differentiable
building block, a bandit whose return quantiles are known, and simulator
invariants over randomized episodes.

Every check returns a short detail string on success and raises
OracleError on failure. `run_oracles` collects the outcomes.

Author: transit-control maintainers

Date: 17.10.2026
"""

import hashlib
import logging
import time
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from transit_control_app.src.agents.distortion import wang_weights
from transit_control_app.src.agents.learner import (
    Batch,
    actor_objective,
    gradients,
    lookahead_objective,
    meta_gradient,
    quantile_critic_fn,
    quantile_critic_loss,
)
from transit_control_app.src.agents.networks import (
    Architecture,
    actor_forward,
    build_architecture,
    critic_quantiles,
    init_actor,
    init_meta,
    init_quantile_critic,
)
from transit_control_app.src.agents.quantile import fraction_grid, midpoints, quantile_huber
from transit_control_app.src.agents.spec import AgentSpec
from transit_control_app.src.agents.variant import AgentVariant
from transit_control_app.src.config.base import fixture_path
from transit_control_app.src.config.manager import load_run_config
from transit_control_app.src.env.environment import TransitEnv
from transit_control_app.src.env.events import EGO_DIM, EVENT_DIM
from transit_control_app.src.env.observation import N_FEATURES
from transit_control_app.src.errors import OracleError
from transit_control_app.src.neural.attention import AttentionSpec, attention_aggregate, init_attention
from transit_control_app.src.neural.embedding import QuantileEmbedding, init_embedding, quantile_embed
from transit_control_app.src.neural.gradcheck import gradient_check
from transit_control_app.src.neural.network import NetworkSpec, init_mlp, mlp_backward, mlp_forward
from transit_control_app.src.neural.optim import adam_step
from transit_control_app.src.neural.parameters import ParameterSet
from transit_control_app.src.neural.tensor import Tensor
from transit_control_app.src.trainer.train import make_env
from transit_control_app.src.types import FloatArray

logger = logging.getLogger(__name__)

DESK_ROUTE = "desk_route.json"
GRADIENT_TOLERANCE = 1e-5
META_GRADIENT_TOLERANCE = 1e-4
BANDIT_TAUS = (0.1, 0.2, 0.3, 0.7, 0.8, 0.9)
BANDIT_TOLERANCE = 0.05
# 10^3 midpoints leave ~1e-3 of mass uncounted at |beta| = 0.8, the weights grow without bound at one tail
RIEMANN_MIDPOINTS = 10_000


@dataclass(frozen=True)
class OracleResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise OracleError(message)


# losses

def check_quantile_huber() -> str:
    for tau in (0.1, 0.5, 0.9):
        value = quantile_huber(0.0, tau, 1.0).item()
        _expect(abs(value) < 1e-12, f"quantile_huber(0, {tau}, 1) = {value}, expected 0")

    for delta, tau, kappa, expected in ((0.5, 0.5, 1.0, 0.0625), (-2.0, 0.9, 1.0, 0.15)):
        value = quantile_huber(delta, tau, kappa).item()
        _expect(abs(value - expected) < 1e-12,
                f"quantile_huber({delta}, {tau}, {kappa}) = {value!r}, expected {expected}")

    gap = 0.0
    for kappa in (0.01, 0.5, 1.0, 2.0):
        for sign in (1.0, -1.0):
            inside = quantile_huber(sign * kappa * (1 - 1e-12), 0.3, kappa).item()
            outside = quantile_huber(sign * kappa * (1 + 1e-12), 0.3, kappa).item()
            gap = max(gap, abs(inside - outside))
    _expect(gap < 1e-9, f"quantile_huber jumps by {gap:.3g} at |delta| = kappa")
    return f"hand values exact, branch gap {gap:.1e}"


def check_wang_weights() -> str:
    grid = midpoints(fraction_grid(1000))
    neutral = wang_weights(0.0, grid).values
    _expect(float(np.max(np.abs(neutral - 1.0))) < 1e-12, "wang_weights(0) is not identically 1")

    centre = wang_weights(0.8, np.array([0.5])).values[0]
    _expect(abs(centre - np.exp(-0.32)) < 1e-9, f"wang_weights(0.8) at 0.5 = {centre}, expected exp(-0.32)")

    fine = midpoints(fraction_grid(RIEMANN_MIDPOINTS))
    worst = 0.0
    for beta in (0.8, -0.8, 0.3, -0.3):
        integral = float(np.mean(wang_weights(beta, fine).values))
        worst = max(worst, abs(integral - 1.0))
        _expect(abs(integral - 1.0) < 1e-3, f"wang_weights({beta}) integrate to {integral:.6f}")

    coarse = midpoints(fraction_grid(100))
    _expect(bool(np.all(np.diff(wang_weights(0.8, coarse).values) < 0)), "wang_weights(0.8) not decreasing")
    _expect(bool(np.all(np.diff(wang_weights(-0.8, coarse).values) > 0)), "wang_weights(-0.8) not increasing")
    return f"identities hold, worst integral error {worst:.1e}"


# gradients

def _tiny_spec(variant: AgentVariant = AgentVariant.IQNC_M) -> AgentSpec:
    return AgentSpec(variant, n_quantiles=4, n_target_quantiles=5, hidden=(8, 8), n_cos=8,
                     attention_dim=4, activation="tanh", kappa=1.0, gamma=0.9)


def random_batch(rng: np.random.Generator, size: int = 6, max_events: int = 3) -> Batch:
    """Minibatch of made-up transitions; the first row has an empty event graph."""
    n_events = rng.integers(0, max_events + 1, size=size)
    n_events[0] = 0
    events = np.zeros((size, max_events, EVENT_DIM))
    mask = np.zeros((size, max_events))
    for i, n in enumerate(n_events):
        events[i, :n] = rng.normal(size=(n, EVENT_DIM))
        mask[i, :n] = 1.0
    return Batch(
        states=rng.normal(size=(size, N_FEATURES)),
        actions=rng.uniform(0.0, 1.0, size=(size, 1)),
        rewards=rng.normal(size=size),
        next_states=rng.normal(size=(size, N_FEATURES)),
        ego=rng.normal(size=(size, EGO_DIM)),
        events=events,
        mask=mask,
    )


def _check(name: str, fn: Callable[[], float], analytic: dict[str, FloatArray], params: ParameterSet,
           tolerance: float = GRADIENT_TOLERANCE) -> float:
    error = gradient_check(fn, analytic, params)
    _expect(error < tolerance, f"{name}: relative gradient error {error:.3g} exceeds {tolerance:g}")
    return error


def gradient_mlp(rng: np.random.Generator) -> float:
    worst = 0.0
    for activation in ("linear", "relu", "tanh"):
        spec = NetworkSpec((3, 5, 2), (activation, "linear"), prefix=activation)
        params = init_mlp(ParameterSet(activation), spec, rng)
        x = rng.normal(size=(4, 3))
        dy = rng.normal(size=(4, 2))
        _, cache = mlp_forward(params, spec, x)
        analytic, _ = mlp_backward(cache, dy)

        def fn() -> float:
            y, _ = mlp_forward(params, spec, x)
            return float(np.sum(y * dy))

        worst = max(worst, _check(f"{activation} layer", fn, analytic, params))
    return worst


def gradient_embedding(rng: np.random.Generator) -> float:
    emb = QuantileEmbedding(n_cos=6, dim=5)
    params = init_embedding(ParameterSet("embedding"), emb, rng)
    taus = rng.uniform(0.05, 0.95, size=(3, 4))
    probe = rng.normal(size=(3, 4, 5))

    def value(leaves: dict[str, Tensor]) -> Tensor:
        return (quantile_embed(taus, leaves, emb) * probe).sum()

    leaves = params.tensors()
    analytic = gradients(value(leaves), leaves, "the embedding")
    return _check("quantile embedding", lambda: value(params.constants()).item(), analytic, params)


def gradient_attention(rng: np.random.Generator) -> float:
    spec = AttentionSpec(ego_dim=EGO_DIM, event_dim=EVENT_DIM, dim=4)
    params = init_attention(ParameterSet("attention"), spec, rng)
    batch = random_batch(rng)
    probe = rng.normal(size=(len(batch), spec.dim))

    def value(leaves: dict[str, Tensor]) -> Tensor:
        out, _ = attention_aggregate(leaves, spec, batch.ego, batch.events, batch.mask)
        return (out * probe).sum()

    leaves = params.tensors()
    analytic = gradients(value(leaves), leaves, "attention")
    return _check("attention", lambda: value(params.constants()).item(), analytic, params)


def gradient_critic_loss(rng: np.random.Generator) -> float:
    spec = _tiny_spec()
    arch = build_architecture(spec)
    critic = init_quantile_critic(arch, rng)
    target = critic.copy("target").constants()
    batch = random_batch(rng)
    fractions = fraction_grid(spec.n_quantiles)
    target_fractions = fraction_grid(spec.n_target_quantiles)
    next_actions = rng.uniform(0.0, 1.0, size=(len(batch), 1))

    def value(leaves: dict[str, Tensor]) -> Tensor:
        return quantile_critic_loss(leaves, target, next_actions, arch, batch, fractions, target_fractions,
                                    spec.kappa, spec.gamma)

    leaves = critic.tensors()
    analytic = gradients(value(leaves), leaves, "the critic loss")
    return _check("critic loss", lambda: value(critic.constants()).item(), analytic, critic)


def _actor_setup(rng: np.random.Generator) -> tuple[AgentSpec, Architecture, ParameterSet, ParameterSet, FloatArray]:
    spec = _tiny_spec()
    arch = build_architecture(spec)
    actor = init_actor(arch, rng)
    critic = init_quantile_critic(arch, rng)
    return spec, arch, actor, critic, fraction_grid(spec.n_quantiles)


def gradient_actor_objective(rng: np.random.Generator) -> float:
    _, arch, actor, critic, fractions = _actor_setup(rng)
    critic_fn = quantile_critic_fn(critic.constants(), arch, midpoints(fractions))
    weights = wang_weights(0.8, midpoints(fractions)).values
    states = rng.normal(size=(6, N_FEATURES))

    def value(leaves: dict[str, Tensor]) -> Tensor:
        return actor_objective(leaves, arch, states, critic_fn, weights, fractions)

    leaves = actor.tensors()
    analytic = gradients(value(leaves), leaves, "the actor objective")
    return _check("actor objective", lambda: value(actor.constants()).item(), analytic, actor)


def gradient_meta(rng: np.random.Generator, lr_actor: float = 0.1) -> float:
    _, arch, actor, critic, fractions = _actor_setup(rng)
    meta = init_meta(arch, rng)
    critic_fn = quantile_critic_fn(critic.constants(), arch, midpoints(fractions))
    batch, batch_prime = random_batch(rng), random_batch(rng)

    analytic, _ = meta_gradient(actor, meta, arch, batch, batch_prime, critic_fn, fractions, lr_actor)

    def fn() -> float:
        outer, _ = lookahead_objective(actor, meta, arch, batch, batch_prime, critic_fn, fractions, lr_actor)
        return outer.item()

    return _check("meta gradient", fn, analytic, meta, META_GRADIENT_TOLERANCE)


GRADIENT_CASES: dict[str, Callable[[np.random.Generator], float]] = {
    "mlp": gradient_mlp,
    "embedding": gradient_embedding,
    "attention": gradient_attention,
    "critic-loss": gradient_critic_loss,
    "actor-objective": gradient_actor_objective,
    "meta": gradient_meta,
}


def check_gradients(seed: int = 7) -> str:
    rng = np.random.default_rng(seed)
    errors = {name: case(rng) for name, case in GRADIENT_CASES.items()}
    return ", ".join(f"{name} {error:.1e}" for name, error in errors.items())


# learning

def train_bandit_critic(steps: int = 5000, seed: int = 0, batch_size: int = 64,
                        lr: float = 1e-3) -> dict[float, float]:
    """Fit the quantile critic to Bernoulli(0.5) rewards of a single state and action.

    Returns the sorted critic quantiles at BANDIT_TAUS.
    """
    spec = AgentSpec(AgentVariant.IQNC_N, n_quantiles=7, n_target_quantiles=7, kappa=0.01, gamma=0.0,
                     hidden=(32, 32), n_cos=32)
    arch = build_architecture(spec)
    rng = np.random.default_rng(seed)
    critic = init_quantile_critic(arch, rng)

    # interval midpoints are exactly the probed fractions plus 0.5
    fractions = np.array([0.05, 0.15, 0.25, 0.35, 0.65, 0.75, 0.85, 0.95])
    zeros = np.zeros((batch_size, N_FEATURES))
    actions = np.full((batch_size, 1), 0.5)
    empty = np.zeros((batch_size, 1, EVENT_DIM))

    for _ in range(steps):
        batch = Batch(zeros, actions, rng.binomial(1, 0.5, size=batch_size).astype(np.float64), zeros,
                      np.zeros((batch_size, EGO_DIM)), empty, np.zeros((batch_size, 1)))
        leaves = critic.tensors()
        loss = quantile_critic_loss(leaves, critic.constants(), actions, arch, batch, fractions, fractions,
                                    spec.kappa, spec.gamma)
        adam_step(critic, gradients(loss, leaves, "the bandit critic"), lr=lr)

    z = critic_quantiles(critic.constants(), arch, zeros[:1], actions[:1], np.asarray(BANDIT_TAUS)).data[0]
    return dict(zip(BANDIT_TAUS, np.sort(z).tolist()))


def check_bandit_quantiles(steps: int = 5000) -> str:
    quantiles = train_bandit_critic(steps)
    worst = 0.0
    for tau, z in quantiles.items():
        expected = 0.0 if tau < 0.5 else 1.0
        worst = max(worst, abs(z - expected))
        _expect(abs(z - expected) < BANDIT_TOLERANCE, f"bandit quantile at {tau} is {z:.4f}, expected {expected}")
    return f"worst quantile error {worst:.3f} after {steps} steps"


def train_actor_bowl(steps: int = 3000, peak: float = 0.7, seed: int = 0, lr: float = 1e-3) -> FloatArray:
    """Ascend a critic whose value is -(a - peak)^2; returns the final actions."""
    spec = AgentSpec(AgentVariant.IQNC_N, hidden=(8, 8), activation="tanh")
    arch = build_architecture(spec)
    rng = np.random.default_rng(seed)
    actor = init_actor(arch, rng)
    states = rng.normal(size=(32, N_FEATURES))
    fractions = np.array([0.0, 1.0])

    def bowl(_: Tensor, a: Tensor) -> Tensor:
        return -((a - peak) ** 2)

    for _ in range(steps):
        leaves = actor.tensors()
        objective = actor_objective(leaves, arch, states, bowl, np.ones(1), fractions)
        adam_step(actor, gradients(objective, leaves, "the bowl actor", ascend=True), lr=lr)
    return actor_forward(actor.constants(), arch, states).data.ravel()


def check_actor_bowl() -> str:
    actions = train_actor_bowl()
    worst = float(np.max(np.abs(actions - 0.7)))
    _expect(worst < 0.01, f"actor settled {worst:.4f} away from the optimum")
    return f"actions within {worst:.1e} of the optimum"


# simulator

def invariant_episode(env: TransitEnv, seed: int) -> tuple[str, int, list[str]]:
    """One randomized episode with random holds; returns (state digest, ticks, violations)."""
    actions = np.random.default_rng(seed)
    env.reset(seed, train=True)
    state = env.state
    digest = hashlib.sha1()
    violations: list[str] = []
    ticks = 0

    while not env.done:
        for bus_id in env.step():
            env.act(bus_id, env.observe(bus_id), float(actions.uniform()))
        ticks += 1

        accounted = state.n_waiting() + state.n_onboard() + state.ledger.n_alighted
        if accounted != state.ledger.spawned:
            violations.append(f"t={state.clock:g}: {state.ledger.spawned} spawned, {accounted} accounted for")
        for bus in state.buses:
            if len(bus.occupancy) > state.cfg.capacity:
                violations.append(f"t={state.clock:g}: bus {bus.id} carries {len(bus.occupancy)}")
        active = state.active_buses()
        for leader, follower in zip(active, active[1:]):
            if follower.position > leader.position:
                violations.append(f"t={state.clock:g}: bus {follower.id} overtook bus {leader.id}")

        digest.update(np.array([state.clock, state.ledger.spawned, *(b.position for b in state.buses),
                                *(len(b.occupancy) for b in state.buses)]).tobytes())
    return digest.hexdigest(), ticks, violations


def check_simulator(ticks: int = 20_000, seed: int = 0) -> str:
    run = load_run_config(fixture_path(DESK_ROUTE))
    env, replay = make_env(run), make_env(run)
    seeds = np.random.SeedSequence(seed)
    covered = episodes = 0

    while covered < ticks:
        episode_seed = int(seeds.spawn(1)[0].generate_state(1, dtype=np.uint64)[0])
        digest, n, violations = invariant_episode(env, episode_seed)
        _expect(not violations, f"seed {episode_seed}: {'; '.join(violations[:3])}")
        again, _, _ = invariant_episode(replay, episode_seed)
        _expect(digest == again, f"seed {episode_seed}: two runs diverged")
        covered += n
        episodes += 1
    return f"{covered} ticks over {episodes} episodes, no violations"


ORACLES: dict[str, Callable[[], str]] = {
    "quantile-huber": check_quantile_huber,
    "wang-weights": check_wang_weights,
    "gradients": check_gradients,
    "actor-bowl": check_actor_bowl,
    "bandit-quantiles": check_bandit_quantiles,
    "simulator": check_simulator,
}


def run_oracles(names: Iterable[str] | None = None) -> list[OracleResult]:
    selected = list(names) if names else list(ORACLES)
    unknown = [name for name in selected if name not in ORACLES]
    if unknown:
        raise ValueError(f"Unknown oracles: {', '.join(unknown)}; choose from {', '.join(ORACLES)}")

    results = []
    for name in selected:
        start = time.perf_counter()
        try:
            detail, passed = ORACLES[name](), True
        except OracleError as e:
            detail, passed = str(e), False
        seconds = time.perf_counter() - start
        logger.info("%s %s (%.2f s): %s", "PASS" if passed else "FAIL", name, seconds, detail)
        results.append(OracleResult(name, passed, detail, seconds))
    return results
