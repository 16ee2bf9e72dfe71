"""
Road Weights
============

Turns per-region road indexes and road occupancy into per-road weights.

    weight_j = index_i * T1 + T2 * density_j + WEIGHT_FLOOR     (road j in region i)

density_j is the raw vehicle count on road j. The floor keeps every weight
strictly positive so the shortest-path search never sees zero-cost cycles.
The density-only baseline is the same formula with every index at 0 and T2 = 1.
"""

from typing import Dict, Mapping, Sequence

from backend.services.network.model import FogPartition

WEIGHT_FLOOR = 1e-6

RoadWeights = Dict[str, float]


def road_weights(
    indexes: Sequence[int],
    occupancy: Mapping[str, int],
    partition: FogPartition,
    t1: float = 1.0,
    t2: float = 1.0,
) -> RoadWeights:
    """
    Weights for every road from the region indexes chosen by the agents.

    Raises:
        ValueError: indexes do not match the number of fog regions
    """
    if len(indexes) != partition.n_regions:
        raise ValueError(
            f"expected {partition.n_regions} region indexes, got {len(indexes)}"
        )
    return {
        road_id: int(indexes[region]) * t1 + t2 * occupancy.get(road_id, 0) + WEIGHT_FLOOR
        for road_id, region in partition.region_of.items()
    }


def baseline_weights(occupancy: Mapping[str, int], road_ids: Sequence[str]) -> RoadWeights:
    """Density-only weights used by the rule-based baseline and for BV routes."""
    return {road_id: float(occupancy.get(road_id, 0)) + WEIGHT_FLOOR for road_id in road_ids}
