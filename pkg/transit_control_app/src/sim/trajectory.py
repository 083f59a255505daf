#!/usr/bin/env python3.12
"""
trajectory

Per-tick bus trajectory samples and their CSV form.

Author: transit-control maintainers

Date: 17.10.2026
"""

from dataclasses import dataclass, field

import pandas as pd

from transit_control_app.src.sim.state import SimState
from transit_control_app.src.types import TrajectoryRow

TRAJECTORY_COLUMNS = ["tick", "bus_id", "position_km", "phase", "occupancy"]


@dataclass
class TrajectoryLog:
    """Samples of (tick, bus, position, phase, occupancy) for time-space diagrams."""
    capacity: int
    route_length: float
    rows: list[TrajectoryRow] = field(default_factory=list)

    def record(self, state: SimState) -> None:
        for bus in state.buses:
            if bus.is_active:
                self.rows.append((state.clock, bus.id, bus.position, bus.phase.value, len(bus.occupancy)))

    def bus_ids(self) -> list[int]:
        return sorted({row[1] for row in self.rows})

    def series(self, bus_id: int) -> list[tuple[float, float, float]]:
        """(time, position, occupancy fraction) samples of one bus."""
        return [(t, pos, occ / self.capacity) for t, b, pos, _, occ in self.rows if b == bus_id]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=TRAJECTORY_COLUMNS)


def write_trajectory_csv(log: TrajectoryLog, path: str) -> None:
    frame = log.to_frame()
    frame.attrs.clear()
    with open(path, "w", newline="") as file:
        file.write(f"# capacity={log.capacity} route_length={log.route_length}\n")
        frame.to_csv(file, index=False, float_format="%.6f")


def read_trajectory_csv(path: str) -> TrajectoryLog:
    with open(path, "r") as file:
        header = file.readline()
        meta = dict(item.split("=") for item in header.lstrip("# ").split())
        frame = pd.read_csv(file)

    log = TrajectoryLog(capacity=int(meta["capacity"]), route_length=float(meta["route_length"]))
    log.rows = [
        (float(r.tick), int(r.bus_id), float(r.position_km), str(r.phase), int(r.occupancy))
        for r in frame.itertuples(index=False)
    ]
    return log
