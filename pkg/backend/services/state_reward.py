"""
State and Reward
================

Builds the agents' graph state (node features + fog adjacency) and the
shared scalar reward from simulator observations.

NODE FEATURES (one row per fog region):
    column 0: mean speed of vehicles in the region, or the mean speed limit
              of its roads when the region is empty
    column 1: congestion c_i = (1/M_i) * sum over region roads of
              occupancy * tau / (lanes * length)

REWARD (network-wide, over active RVs only):
    r = w_base * v + w_bonus * [dv > 0] - w_penalty * [dv <= -5]
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from backend.schemas.scenario import RewardWeights
from backend.services.network.model import FogPartition, RoadNetwork
from backend.services.simulator.vehicle import SimState, Vehicle

FEATURE_COUNT = 2
PENALTY_THRESHOLD = 5.0

# N x 2 float64
FeatureMatrix = np.ndarray


@dataclass(frozen=True)
class RewardRecord:
    r_t: float
    mean_rv_speed: float
    delta_speed: float


def node_features(
    state: SimState,
    partition: FogPartition,
    network: RoadNetwork,
    tau: float,
) -> FeatureMatrix:
    """N x 2 matrix of (mean speed, congestion) per fog region."""
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")

    n = partition.n_regions
    speed_sum = np.zeros(n)
    vehicle_count = np.zeros(n, dtype=np.int64)
    for vehicle in state.active():
        region = partition.region_of[vehicle.current_road]
        speed_sum[region] += vehicle.speed
        vehicle_count[region] += 1

    features = np.zeros((n, FEATURE_COUNT), dtype=np.float64)
    for region in range(n):
        roads = [network.road(road_id) for road_id in partition.region_roads[region]]
        if vehicle_count[region]:
            features[region, 0] = speed_sum[region] / vehicle_count[region]
        else:
            features[region, 0] = np.mean([road.speed_limit for road in roads])
        congestion = sum(state.count(road.id) * tau / road.capacity_length for road in roads)
        features[region, 1] = congestion / len(roads)
    return features


def mean_speed(vehicles: Sequence[Vehicle]) -> float:
    return float(np.mean([v.speed for v in vehicles])) if vehicles else 0.0


def reward(
    prev_mean_rv_speed: float,
    state: SimState,
    weights: RewardWeights,
) -> RewardRecord:
    """Speed reward with a bonus on improvement and a penalty on a drop of 5 m/s or more."""
    current = mean_speed(state.rerouting_vehicles())
    delta = current - prev_mean_rv_speed
    r_t = weights.base * current
    if delta > 0:
        r_t += weights.bonus
    if delta <= -PENALTY_THRESHOLD:
        r_t -= weights.penalty
    return RewardRecord(r_t=r_t, mean_rv_speed=current, delta_speed=delta)
