"""
Routing Services
================

Road weights, K shortest loopless paths and entropy-balanced assignment.

Modules:
- weights.py: road_weights, baseline_weights
- ksp.py: RouteCandidate, shortest_path, k_shortest_paths
- priority.py: PriorityOrder, compute_priority
- entropy.py: FootprintTable, route_entropy
- ebksp.py: assign_routes
"""

from backend.services.routing.ksp import (
    RouteCandidate,
    k_shortest_paths,
    route_weight,
    shortest_path,
)
from backend.services.routing.weights import WEIGHT_FLOOR, RoadWeights, baseline_weights, road_weights
from backend.services.routing.priority import PriorityOrder, compute_priority, distance_to_destination
from backend.services.routing.entropy import FootprintTable, route_entropy
from backend.services.routing.ebksp import AssignmentResult, RouteDecision, assign_routes

__all__ = [
    "AssignmentResult",
    "FootprintTable",
    "PriorityOrder",
    "RoadWeights",
    "RouteCandidate",
    "RouteDecision",
    "WEIGHT_FLOOR",
    "assign_routes",
    "baseline_weights",
    "compute_priority",
    "distance_to_destination",
    "k_shortest_paths",
    "road_weights",
    "route_entropy",
    "route_weight",
    "shortest_path",
]
