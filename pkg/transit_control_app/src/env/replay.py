#!/usr/bin/env python3.12
"""
replay

Per-agent experience ring buffers.

Author: transit-control maintainers

Date: 17.10.2026
"""

import json
import logging
from dataclasses import dataclass
from typing import Any, Iterable

import numpy as np

import transit_control_app.src.config.base as config
from transit_control_app.src.env.events import EventGraph
from transit_control_app.src.env.observation import Observation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Experience:
    bus_id: int
    s: Observation
    a: float
    r: float
    s_next: Observation
    g: EventGraph
    reward_time: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "bus_id": self.bus_id,
            "s": self.s.to_dict(),
            "a": self.a,
            "r": self.r,
            "s_next": self.s_next.to_dict(),
            "g": self.g.to_dict(),
            "reward_time": self.reward_time,
        }


class ReplayBuffer:
    """Ring buffer that only yields minibatches once it holds more than `threshold` items."""

    def __init__(self, capacity: int = config.buffer_capacity, threshold: float = config.buffer_threshold) -> None:
        if capacity < 1 or threshold < 0:
            raise ValueError("Replay capacity must be >= 1 and threshold >= 0")
        self.capacity = capacity
        self.threshold = threshold
        self._items: list[Experience] = []
        self._seqs: list[int] = []
        self._next_seq = 0

    def __len__(self) -> int:
        return len(self._items)

    @property
    def ready(self) -> bool:
        return len(self) > self.threshold

    def push(self, exp: Experience) -> int:
        """Store `exp`, overwriting the oldest entry when full; returns its sequence number."""
        seq = self._next_seq
        if len(self._items) < self.capacity:
            self._items.append(exp)
            self._seqs.append(seq)
        else:
            slot = seq % self.capacity
            self._items[slot] = exp
            self._seqs[slot] = seq
        self._next_seq += 1
        return seq

    def at(self, index: int) -> Experience:
        return self._items[index]

    def sequence_numbers(self) -> list[int]:
        return sorted(self._seqs)

    def sample(self, rng: np.random.Generator, c: int) -> list[Experience]:
        if not self.ready:
            return []
        indices = rng.choice(len(self), size=min(c, len(self)), replace=False)
        return [self._items[i] for i in indices]

    def __iter__(self) -> Any:
        order = np.argsort(self._seqs)
        return iter([self._items[i] for i in order])


class ReplayMemory:
    """One buffer per agent; the readiness threshold applies to the total count."""

    def __init__(self, capacity: int = config.buffer_capacity, threshold: float = config.buffer_threshold) -> None:
        self.capacity = capacity
        self.threshold = threshold
        self.buffers: dict[int, ReplayBuffer] = {}

    def buffer(self, bus_id: int) -> ReplayBuffer:
        if bus_id not in self.buffers:
            # per-agent buffers never gate sampling themselves
            self.buffers[bus_id] = ReplayBuffer(self.capacity, threshold=0)
        return self.buffers[bus_id]

    def push(self, exp: Experience) -> None:
        self.buffer(exp.bus_id).push(exp)

    def __len__(self) -> int:
        return sum(len(b) for b in self.buffers.values())

    @property
    def ready(self) -> bool:
        return len(self) > self.threshold

    def sample(self, rng: np.random.Generator, c: int, bus_id: int | None = None) -> list[Experience]:
        """Minibatch without replacement, drawn round-robin over agents or from one agent's buffer."""
        if not self.ready:
            return []
        if bus_id is not None:
            return self.buffer(bus_id).sample(rng, c)

        # each agent contributes a shuffled queue; take one item per agent per round
        queues = [list(rng.permutation(len(self.buffers[agent]))) for agent in sorted(self.buffers)]
        agents = sorted(self.buffers)
        batch: list[Experience] = []
        while len(batch) < c and any(queues):
            for agent, queue in zip(agents, queues):
                if queue and len(batch) < c:
                    batch.append(self.buffers[agent].at(int(queue.pop())))
        return batch


def dump_experiences(experiences: Iterable[Experience], path: str) -> int:
    """Write one JSON object per line; returns the number written."""
    count = 0
    with open(path, "w") as file:
        for exp in experiences:
            file.write(json.dumps(exp.to_dict()) + "\n")
            count += 1
    logger.debug("Dumped %d experiences to %s", count, path)
    return count
