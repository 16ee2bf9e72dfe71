"""
Entropy-Balanced Route Assignment
=================================

Assigns one route to every rerouting vehicle for the current control step.

ALGORITHM:
1. Rank vehicles by static distance to destination (priority.py) and split
   into a high-priority head of x vehicles and a low-priority tail
2. High-priority vehicles, in rank order, take their minimum-weight route
3. Low-priority vehicles, in rank order, take the candidate among their K
   shortest routes with the lowest popularity (ties: lower weight, then
   road ids); the "max" objective takes the highest popularity instead
4. Every assignment adds its route to the footprint table before the next
   vehicle is scored

The footprint table starts empty on every call. A vehicle with no candidate
route keeps the route it already has.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Mapping, Optional, Sequence, Tuple

from backend.schemas.experiment import PriorityMode
from backend.services.network.model import RoadNetwork
from backend.services.routing.entropy import FootprintTable, Normalization, route_entropy
from backend.services.routing.ksp import RouteCandidate, k_shortest_paths
from backend.services.routing.priority import PriorityOrder, compute_priority
from backend.services.simulator.vehicle import Vehicle

logger = logging.getLogger(__name__)

PopularityObjective = Literal["min", "max"]


@dataclass(frozen=True)
class RouteDecision:
    """One row of router diagnostics."""

    vehicle_id: str
    rank: int
    high_priority: bool
    candidate_count: int
    weight: Optional[float]
    popularity: Optional[float]


@dataclass
class AssignmentResult:
    routes: Dict[str, RouteCandidate]
    footprints: FootprintTable
    order: PriorityOrder
    decisions: List[RouteDecision] = field(default_factory=list)
    kept: List[str] = field(default_factory=list)


def _popularity_key(
    candidate: RouteCandidate,
    footprints: FootprintTable,
    objective: PopularityObjective,
    normalization: Normalization,
) -> Tuple[float, float, Tuple[str, ...]]:
    _, pop = route_entropy(candidate, footprints, normalization)
    score = pop if objective == "min" else -pop
    return (score, candidate.total_weight, candidate.roads)


def assign_routes(
    vehicles: Sequence[Vehicle],
    network: RoadNetwork,
    weights: Mapping[str, float],
    mode: PriorityMode,
    x: int,
    k: int,
    popularity_objective: PopularityObjective = "min",
    normalization: Normalization = "share",
) -> AssignmentResult:
    """Route every vehicle by priority, then by footprint popularity."""
    by_id = {v.id: v for v in vehicles}
    order = compute_priority(vehicles, network, mode, x)
    footprints = FootprintTable(network)
    result = AssignmentResult(routes={}, footprints=footprints, order=order)

    for vehicle_id in order.unreachable:
        logger.warning(f"Vehicle kept on its route: destination unreachable vehicle={vehicle_id}")
        result.kept.append(vehicle_id)

    for rank, vehicle_id in enumerate(order.high + order.low):
        vehicle = by_id[vehicle_id]
        high = rank < len(order.high)
        candidates = k_shortest_paths(
            network, weights, vehicle.current_road, vehicle.destination_junction, 1 if high else k
        )
        if not candidates:
            logger.warning(f"Vehicle kept on its route: no candidate vehicle={vehicle_id}")
            result.kept.append(vehicle_id)
            result.decisions.append(RouteDecision(vehicle_id, rank, high, 0, None, None))
            continue

        if high:
            chosen = candidates[0]
        else:
            chosen = min(
                candidates,
                key=lambda c: _popularity_key(c, footprints, popularity_objective, normalization),
            )
        _, pop = route_entropy(chosen, footprints, normalization)
        footprints.add_route(chosen.roads)
        result.routes[vehicle_id] = chosen
        result.decisions.append(
            RouteDecision(vehicle_id, rank, high, len(candidates), chosen.total_weight, pop)
        )

    return result
