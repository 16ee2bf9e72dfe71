"""
Fog Partition and Fog Adjacency
===============================

Turns an explicit road -> region assignment into a FogPartition and derives
the fog-layer graph from road-successor crossings.

A[i][j] = 1 iff i == j, or some road in region i has a successor in region j
(or vice versa). The diagonal is part of the matrix so that attention
neighbourhoods include the node itself.
"""

from typing import Dict, List, Mapping

import numpy as np

from backend.core.exceptions import PartitionError
from backend.services.network.model import FogAdjacency, FogPartition, RoadNetwork


def build_fog_partition(network: RoadNetwork, assignment: Mapping[str, int]) -> FogPartition:
    """
    Validate an assignment and build the inverse map.

    Raises:
        PartitionError: missing road, unknown road, empty region or
            non-contiguous region indexes
    """
    unknown = sorted(set(assignment) - set(network.road_ids))
    if unknown:
        raise PartitionError(f"assignment names unknown roads: {unknown[:5]}")

    missing = [road_id for road_id in network.road_ids if road_id not in assignment]
    if missing:
        raise PartitionError(f"missing road in assignment: {missing[:5]}")

    indexes = sorted(set(assignment.values()))
    if not indexes:
        raise PartitionError("empty region: network has no roads to partition")
    if indexes != list(range(len(indexes))):
        raise PartitionError(f"non-contiguous region indexes: {indexes}")

    buckets: List[List[str]] = [[] for _ in indexes]
    for road_id in network.road_ids:
        buckets[assignment[road_id]].append(road_id)
    for index, bucket in enumerate(buckets):
        if not bucket:
            raise PartitionError(f"empty region {index}")

    region_of: Dict[str, int] = {road_id: assignment[road_id] for road_id in network.road_ids}
    return FogPartition(
        region_of=region_of,
        n_regions=len(buckets),
        region_roads=tuple(tuple(bucket) for bucket in buckets),
    )


def fog_adjacency(network: RoadNetwork, partition: FogPartition) -> FogAdjacency:
    """Symmetric fog-region adjacency from cross-region successor pairs."""
    n = partition.n_regions
    matrix = np.eye(n, dtype=np.int8)
    for road in network.roads:
        i = partition.region_of[road.id]
        for successor in network.successors(road.id):
            j = partition.region_of[successor]
            if i != j:
                matrix[i, j] = 1
                matrix[j, i] = 1
    matrix.setflags(write=False)
    return FogAdjacency(matrix=matrix)
