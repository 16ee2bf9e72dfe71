"""
Vehicle Priority
================

Orders rerouting vehicles by static distance to destination and splits them
into a high-priority set (first x) and a low-priority set.

D_RV is the metres left on the current road plus the metre-length shortest
path from that road's head junction to the destination. It ignores road
weights on purpose so that the ordering does not depend on agent actions.

Ties are broken by vehicle id. Vehicles whose destination cannot be reached
are excluded and reported in PriorityOrder.unreachable.
"""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from backend.schemas.experiment import PriorityMode
from backend.services.network.model import RoadNetwork
from backend.services.simulator.vehicle import Vehicle


@dataclass(frozen=True)
class PriorityOrder:
    """Vehicles in priority order with their distances, split at x."""

    ranked: Tuple[Tuple[float, str], ...]
    mode: PriorityMode
    high: Tuple[str, ...]
    low: Tuple[str, ...]
    unreachable: Tuple[str, ...] = field(default_factory=tuple)


def distance_to_destination(vehicle: Vehicle, network: RoadNetwork) -> float:
    """Metres from the vehicle's position to its destination junction, inf if unreachable."""
    road = network.road(vehicle.current_road)
    remaining = road.length - vehicle.offset
    rest = network.distances_to(vehicle.destination_junction).get(road.to_junction)
    if rest is None:
        return float("inf")
    return remaining + rest


def compute_priority(
    vehicles: Sequence[Vehicle],
    network: RoadNetwork,
    mode: PriorityMode,
    x: int,
) -> PriorityOrder:
    """Rank vehicles ascending (near) or descending (far) by distance."""
    reachable: List[Tuple[float, str]] = []
    unreachable: List[str] = []
    for vehicle in vehicles:
        distance = distance_to_destination(vehicle, network)
        if distance == float("inf"):
            unreachable.append(vehicle.id)
        else:
            reachable.append((distance, vehicle.id))

    if mode == PriorityMode.NEAR:
        reachable.sort(key=lambda item: (item[0], item[1]))
    else:
        reachable.sort(key=lambda item: (-item[0], item[1]))

    cut = max(0, min(x, len(reachable)))
    ids = [vehicle_id for _, vehicle_id in reachable]
    return PriorityOrder(
        ranked=tuple(reachable),
        mode=mode,
        high=tuple(ids[:cut]),
        low=tuple(ids[cut:]),
        unreachable=tuple(sorted(unreachable)),
    )
