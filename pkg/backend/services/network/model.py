"""
Road Network Model
==================

Immutable domain types for the road graph and its fog partition.

WHY THIS FILE EXISTS:
- Every other module reads roads, lanes, lengths and successors from here
- Invariants are checked once, at construction, and never again
- Instances are shared read-only by the simulator, router and agents

TYPES:
- Road: one directed road segment (length, lanes, free-flow speed)
- RoadNetwork: junctions + roads + derived successor map
- FogPartition: road -> fog region, with the inverse map
- FogAdjacency: symmetric binary fog-region matrix with unit diagonal

The successor relation is purely topological: road b succeeds road a iff
a.to_junction == b.from_junction. No coordinates are stored.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Mapping, Tuple

import networkx as nx
import numpy as np

from backend.core.exceptions import NetworkValidationError


@dataclass(frozen=True)
class Road:
    """A directed road segment between two junctions."""

    id: str
    from_junction: str
    to_junction: str
    length: float
    lane_count: int
    speed_limit: float

    @property
    def capacity_length(self) -> float:
        """Lane-metres, the denominator of every per-road density."""
        return self.lane_count * self.length


@dataclass(frozen=True)
class RoadNetwork:
    """
    Directed road graph.

    Construction validates the structural invariants and builds the successor
    map; both raise NetworkValidationError naming the violated invariant.
    """

    junctions: Tuple[str, ...]
    roads: Tuple[Road, ...]
    _by_id: Dict[str, Road] = field(init=False, repr=False, compare=False)
    _successors: Dict[str, FrozenSet[str]] = field(init=False, repr=False, compare=False)
    _outgoing: Dict[str, Tuple[Road, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        junction_set = set(self.junctions)
        if len(junction_set) != len(self.junctions):
            raise NetworkValidationError("duplicate junction id", invariant="duplicate id")

        by_id: Dict[str, Road] = {}
        for road in self.roads:
            if road.id in by_id:
                raise NetworkValidationError(
                    f"duplicate road id '{road.id}'", invariant="duplicate id"
                )
            for endpoint in (road.from_junction, road.to_junction):
                if endpoint not in junction_set:
                    raise NetworkValidationError(
                        f"road '{road.id}' references unknown junction '{endpoint}'",
                        invariant="dangling junction",
                    )
            if not road.length > 0:
                raise NetworkValidationError(
                    f"road '{road.id}' has nonpositive length {road.length}",
                    invariant="nonpositive length",
                )
            if road.lane_count < 1:
                raise NetworkValidationError(
                    f"road '{road.id}' has lane count {road.lane_count}",
                    invariant="lane count below one",
                )
            if not road.speed_limit > 0:
                raise NetworkValidationError(
                    f"road '{road.id}' has nonpositive speed limit {road.speed_limit}",
                    invariant="nonpositive speed limit",
                )
            by_id[road.id] = road

        outgoing: Dict[str, list] = {j: [] for j in self.junctions}
        for road in self.roads:
            outgoing[road.from_junction].append(road)
        outgoing_sorted = {
            j: tuple(sorted(rs, key=lambda r: r.id)) for j, rs in outgoing.items()
        }
        successors = {
            road.id: frozenset(r.id for r in outgoing_sorted[road.to_junction])
            for road in self.roads
        }

        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_outgoing", outgoing_sorted)
        object.__setattr__(self, "_successors", successors)

    # === Lookups ===

    def road(self, road_id: str) -> Road:
        return self._by_id[road_id]

    def has_road(self, road_id: str) -> bool:
        return road_id in self._by_id

    def successors(self, road_id: str) -> FrozenSet[str]:
        """Roads reachable from road_id through its head junction."""
        return self._successors[road_id]

    def outgoing(self, junction: str) -> Tuple[Road, ...]:
        """Roads leaving a junction, ordered by id."""
        return self._outgoing[junction]

    @property
    def road_ids(self) -> Tuple[str, ...]:
        return tuple(r.id for r in self.roads)

    @cached_property
    def mean_length(self) -> float:
        return float(np.mean([r.length for r in self.roads])) if self.roads else 0.0

    @cached_property
    def length_weights(self) -> Dict[str, float]:
        """Road lengths keyed by road id, for distance-only searches."""
        return {r.id: r.length for r in self.roads}

    @cached_property
    def mean_speed_limit(self) -> float:
        return float(np.mean([r.speed_limit for r in self.roads])) if self.roads else 0.0

    # === Static distances ===

    @cached_property
    def junction_graph(self) -> nx.DiGraph:
        """Junction digraph weighted by the shortest parallel road length."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.junctions)
        for road in self.roads:
            u, v = road.from_junction, road.to_junction
            if graph.has_edge(u, v):
                graph[u][v]["length"] = min(graph[u][v]["length"], road.length)
            else:
                graph.add_edge(u, v, length=road.length)
        return graph

    @cached_property
    def _distance_cache(self) -> Dict[str, Dict[str, float]]:
        return {}

    def distances_to(self, destination: str) -> Dict[str, float]:
        """Metres from every junction that can reach destination."""
        cache = self._distance_cache
        if destination not in cache:
            reverse = self.junction_graph.reverse(copy=False)
            cache[destination] = dict(
                nx.single_source_dijkstra_path_length(reverse, destination, weight="length")
            )
        return cache[destination]

    def can_reach(self, road_id: str, destination: str) -> bool:
        """True if a vehicle on road_id can finish at destination."""
        return self.road(road_id).to_junction in self.distances_to(destination)


@dataclass(frozen=True)
class FogPartition:
    """Assignment of every road to exactly one fog region."""

    region_of: Mapping[str, int]
    n_regions: int
    region_roads: Tuple[Tuple[str, ...], ...]

    def region_size(self, region: int) -> int:
        """M_i, the number of roads governed by region i."""
        return len(self.region_roads[region])


@dataclass(frozen=True, eq=False)
class FogAdjacency:
    """Symmetric 0/1 matrix over fog regions with ones on the diagonal."""

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    def neighbours(self, region: int) -> Tuple[int, ...]:
        """First-order neighbours of a region, itself included."""
        return tuple(int(j) for j in np.flatnonzero(self.matrix[region]))
