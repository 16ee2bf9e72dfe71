"""
Network Services
================

Road graph, fog partition and synthetic network generation.

Modules:
- model.py: Road, RoadNetwork, FogPartition, FogAdjacency
- loader.py: load_network, load_fog_partition, serialize_network
- fog.py: build_fog_partition, fog_adjacency
- grid.py: generate_grid, grid_partition
"""

from backend.services.network.fog import build_fog_partition, fog_adjacency
from backend.services.network.grid import generate_grid, grid_partition
from backend.services.network.loader import (
    load_fog_partition,
    load_network,
    serialize_network,
)
from backend.services.network.model import FogAdjacency, FogPartition, Road, RoadNetwork

__all__ = [
    "FogAdjacency",
    "FogPartition",
    "Road",
    "RoadNetwork",
    "build_fog_partition",
    "fog_adjacency",
    "generate_grid",
    "grid_partition",
    "load_fog_partition",
    "load_network",
    "serialize_network",
]
