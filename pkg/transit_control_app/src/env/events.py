#!/usr/bin/env python3.12
"""
events

Decision log and the event graphs built from it.

An event graph links an ego decision to every decision other buses took
strictly between the ego's previous decision and its next arrival.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from transit_control_app.src.env.observation import N_FEATURES, Observation
from transit_control_app.src.types import FloatArray

EGO_DIM = N_FEATURES + 1
EVENT_DIM = N_FEATURES + 3


@dataclass(frozen=True)
class DecisionRecord:
    bus_id: int
    stop_index: int
    time: float
    obs: Observation
    action: float


@dataclass(frozen=True)
class EventNode:
    bus_id: int
    obs: Observation
    action: float
    d_stop: int
    d_time: float


@dataclass(frozen=True)
class EventGraph:
    ego: DecisionRecord
    events: tuple[EventNode, ...]
    n_stops: int
    headway_scale: float

    @property
    def n_events(self) -> int:
        return len(self.events)

    def ego_features(self) -> FloatArray:
        return np.append(self.ego.obs.normalized, self.ego.action)

    def event_features(self) -> FloatArray:
        """(n_events, EVENT_DIM) node features; empty graphs give shape (0, EVENT_DIM)."""
        if not self.events:
            return np.zeros((0, EVENT_DIM))
        return np.stack([
            np.concatenate([
                e.obs.normalized,
                [e.action, e.d_stop / self.n_stops, e.d_time / self.headway_scale],
            ])
            for e in self.events
        ])

    def to_dict(self) -> dict[str, Any]:
        return {
            "ego": {"bus_id": self.ego.bus_id, "stop": self.ego.stop_index, "time": self.ego.time},
            "events": [
                {"bus_id": e.bus_id, "obs": e.obs.to_dict(), "a": e.action, "d_stop": e.d_stop, "d_time": e.d_time}
                for e in self.events
            ],
        }


def collect_events(decisions: Sequence[DecisionRecord], ego: DecisionRecord, t_now: float,
                   n_stops: int, headway_scale: float) -> EventGraph:
    """Other buses' decisions with ego.time < t < t_now, offsets taken relative to the ego decision."""
    t_prev = ego.time
    if not t_prev < t_now:
        raise ValueError(f"Event interval ({t_prev}, {t_now}) is empty")

    nodes = tuple(
        EventNode(
            bus_id=d.bus_id,
            obs=d.obs,
            action=d.action,
            d_stop=d.stop_index - ego.stop_index,
            d_time=d.time - t_prev,
        )
        for d in decisions
        if d.bus_id != ego.bus_id and t_prev < d.time < t_now
    )
    return EventGraph(ego=ego, events=nodes, n_stops=n_stops, headway_scale=headway_scale)
