"""
K Shortest Loopless Paths
=========================

Yen's algorithm over the road graph, with road ids as edges so parallel
roads between the same junctions stay distinguishable.

A route for a vehicle on road r always starts with r itself; the search runs
from r's head junction to the destination and never revisits r's tail
junction. Routes are ordered by (route_weight of the whole route, road ids),
in both the spur searches and the candidate pool, so the output equals
"all loopless routes sorted by (weight, road ids), first K".

Every search label is keyed by the correctly rounded sum of the full route
so far, never by a running float total, so the order cannot depend on the
order in which weights were added. Because two different exact sums can
round to the same float, a label at a junction only discards a later label
there when it wins for every possible continuation: its exact sum is lower
by more than the float resolution of any route total, or it is no heavier
and sorts first. Road weights must stay well above that resolution;
road_weights floors them at WEIGHT_FLOOR.
"""

import heapq
import math
from dataclasses import dataclass
from typing import AbstractSet, Dict, List, Mapping, Optional, Tuple

from backend.services.network.model import RoadNetwork


@dataclass(frozen=True)
class RouteCandidate:
    """A connected, loopless road sequence and its summed weight."""

    roads: Tuple[str, ...]
    total_weight: float
    loopless: bool = True


def route_weight(roads: Tuple[str, ...], weights: Mapping[str, float]) -> float:
    """Exact (correctly rounded) sum of member road weights."""
    return math.fsum(weights[road_id] for road_id in roads)


def _resolution(weights: Mapping[str, float]) -> float:
    # No loopless route weighs more than every road together.
    return 8.0 * math.ulp(math.fsum(weights.values()))


def _dominates(
    kept: Tuple[str, ...],
    other: Tuple[str, ...],
    weights: Mapping[str, float],
    resolution: float,
) -> bool:
    # Sign of the exact difference; fsum of the combined terms is correctly rounded.
    gap = math.fsum([weights[r] for r in other] + [-weights[r] for r in kept])
    return gap >= resolution or (gap >= 0.0 and kept < other)


def _dijkstra(
    network: RoadNetwork,
    weights: Mapping[str, float],
    prefix: Tuple[str, ...],
    source: str,
    target: str,
    banned_junctions: AbstractSet[str],
    banned_roads: AbstractSet[str],
    resolution: float,
) -> Optional[Tuple[float, Tuple[str, ...]]]:
    """Best spur from source to target under (route_weight(prefix + spur), spur)."""
    prefix_terms = [weights[road_id] for road_id in prefix]
    heap: List[Tuple[float, Tuple[str, ...], Tuple[str, ...]]] = [
        (math.fsum(prefix_terms), (), (source,))
    ]
    settled: Dict[str, List[Tuple[str, ...]]] = {}

    def beaten(node: str, path: Tuple[str, ...]) -> bool:
        return any(_dominates(kept, path, weights, resolution) for kept in settled.get(node, ()))

    while heap:
        key, path, visited = heapq.heappop(heap)
        node = visited[-1]
        if beaten(node, path):
            continue
        settled.setdefault(node, []).append(path)
        if node == target:
            return key, path

        for road in network.outgoing(node):
            head = road.to_junction
            if road.id in banned_roads or head in banned_junctions or head in visited:
                continue
            extended = path + (road.id,)
            if beaten(head, extended):
                continue
            total = math.fsum(prefix_terms + [weights[road_id] for road_id in extended])
            heapq.heappush(heap, (total, extended, visited + (head,)))

    return None


def shortest_path(
    network: RoadNetwork,
    weights: Mapping[str, float],
    from_road: str,
    to_junction: str,
) -> Optional[RouteCandidate]:
    """Single best route, or None when the destination is unreachable."""
    found = k_shortest_paths(network, weights, from_road, to_junction, 1)
    return found[0] if found else None


def k_shortest_paths(
    network: RoadNetwork,
    weights: Mapping[str, float],
    from_road: str,
    to_junction: str,
    k: int,
) -> List[RouteCandidate]:
    """
    Up to k loopless routes from from_road to to_junction, ascending weight.

    Returns an empty list when the destination cannot be reached.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    start = network.road(from_road)
    origin, head = start.from_junction, start.to_junction

    def candidate(spur: Tuple[str, ...]) -> RouteCandidate:
        roads = (from_road,) + spur
        return RouteCandidate(roads=roads, total_weight=route_weight(roads, weights))

    if head == to_junction:
        return [candidate(())]

    resolution = _resolution(weights)
    first = _dijkstra(
        network, weights, (from_road,), head, to_junction, {origin}, frozenset(), resolution
    )
    if first is None:
        return []

    accepted: List[Tuple[str, ...]] = [first[1]]
    seen = {first[1]}
    pool: List[Tuple[float, Tuple[str, ...]]] = []

    while len(accepted) < k:
        last = accepted[-1]
        junctions = [head] + [network.road(road_id).to_junction for road_id in last]

        for i in range(len(last)):
            root = last[:i]
            banned_roads = {p[i] for p in accepted if len(p) > i and p[:i] == root}
            banned_junctions = {origin, *junctions[:i]}
            spur = _dijkstra(
                network,
                weights,
                (from_road,) + root,
                junctions[i],
                to_junction,
                banned_junctions,
                banned_roads,
                resolution,
            )
            if spur is None:
                continue
            path = root + spur[1]
            if path in seen:
                continue
            seen.add(path)
            heapq.heappush(pool, (spur[0], path))

        if not pool:
            break
        _, path = heapq.heappop(pool)
        accepted.append(path)

    return [candidate(path) for path in accepted]
