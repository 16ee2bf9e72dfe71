"""
Route Footprints and Popularity
===============================

Tracks how many assigned routes use each road and scores candidate routes by
the entropy of those footprints.

    omega_i = (len_avg / len_i) * lanes_i * (V_avg / V_f,i)     static per road
    fc_i    = n_i * omega_i                                     n_i = assigned routes using road i
    E(r)    = -sum_i p_i ln p_i      over the roads of route r, 0 ln 0 = 0
    Pop(r)  = exp(E(r))

NORMALIZATION:
- "share" (default): p_i = fc_i / sum of fc over the route. E then lies in
  [0, ln(len(route))] for every footprint table.
- "road_count": p_i = fc_i / len(route), the literal per-road division. Kept
  for comparison runs; it does not respect the entropy bounds once
  footprints exceed the route length.

Both agree on the usual hand cases: fc = (1, 1) gives ln 2, fc = (2, 0) and
an all-zero route give 0.
"""

import math
from typing import Dict, Iterable, Literal, Tuple

from backend.services.network.model import RoadNetwork
from backend.services.routing.ksp import RouteCandidate

Normalization = Literal["share", "road_count"]


class FootprintTable:
    """Per-road assignment counts scaled by static road weights."""

    def __init__(self, network: RoadNetwork):
        len_avg = network.mean_length
        v_avg = network.mean_speed_limit
        self.omega: Dict[str, float] = {
            road.id: (len_avg / road.length) * road.lane_count * (v_avg / road.speed_limit)
            for road in network.roads
        }
        self.counts: Dict[str, int] = {road.id: 0 for road in network.roads}

    def add_route(self, roads: Iterable[str]) -> None:
        """Count one more assigned route on each of its roads."""
        for road_id in roads:
            self.counts[road_id] += 1

    def footprint(self, road_id: str) -> float:
        return self.counts[road_id] * self.omega[road_id]

    def assigned(self, road_id: str) -> int:
        return self.counts[road_id]


def route_entropy(
    route: RouteCandidate,
    footprints: FootprintTable,
    normalization: Normalization = "share",
) -> Tuple[float, float]:
    """Footprint entropy E of a route and its popularity exp(E)."""
    fcs = [footprints.footprint(road_id) for road_id in route.roads]
    if normalization == "share":
        denominator = math.fsum(fcs)
    elif normalization == "road_count":
        denominator = float(len(fcs))
    else:
        raise ValueError(f"unknown entropy normalization '{normalization}'")

    if denominator == 0.0:
        return 0.0, 1.0

    terms = []
    for fc in fcs:
        if fc == 0.0:
            continue
        p = fc / denominator
        terms.append(p * math.log(p))
    entropy = -math.fsum(terms)
    if entropy == 0.0:
        entropy = 0.0  # drop a negative zero
    return entropy, math.exp(entropy)
