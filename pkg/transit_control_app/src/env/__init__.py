"""
Multi-agent decision process over the simulator.
"""

from transit_control_app.src.env.config import EnvConfig
from transit_control_app.src.env.environment import EpisodeLog, TransitEnv
from transit_control_app.src.env.events import DecisionRecord, EventGraph, EventNode, collect_events
from transit_control_app.src.env.observation import Observation, observe
from transit_control_app.src.env.replay import Experience, ReplayBuffer, ReplayMemory, dump_experiences
from transit_control_app.src.env.reward import RewardRecord, compute_reward, fleet_cv2, headway_cv2

__all__ = [
    "DecisionRecord",
    "EnvConfig",
    "EpisodeLog",
    "EventGraph",
    "EventNode",
    "Experience",
    "Observation",
    "ReplayBuffer",
    "ReplayMemory",
    "RewardRecord",
    "TransitEnv",
    "collect_events",
    "compute_reward",
    "dump_experiences",
    "fleet_cv2",
    "headway_cv2",
    "observe",
]
