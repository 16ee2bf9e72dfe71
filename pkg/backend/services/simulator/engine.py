"""
Mesoscopic Simulation Engine
============================

Tick-level vehicle movement, Bernoulli spawning and per-region observation.

LINK MODEL (Greenshields, with a floor):

    rho = occupancy / (lanes * length)                   veh/m
    v   = speed_limit * max(speed_floor, 1 - rho / rho_jam)

A road is at jam density once its occupancy reaches rho_jam * lanes * length.

TICK ORDER:
1. Link speeds are computed once from the occupancy at the start of the tick,
   counting the other vehicles on the road
2. Vehicles move in (current road id, descending offset, id) order
3. Jam checks on the next road use live counts, so a vehicle that has just
   entered a road counts against the one behind it
4. A vehicle crosses at most one road boundary per tick; overflow carries onto
   the next road and is clamped to its length

Spillback: a vehicle that would enter a jammed road holds at offset = length
with speed 0.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from backend.core.exceptions import PartitionError, ScenarioError, SimulationConsistencyError
from backend.schemas.scenario import VehicleClass
from backend.services.network.model import FogPartition, Road, RoadNetwork
from backend.services.routing.ksp import shortest_path
from backend.services.routing.weights import baseline_weights
from backend.services.simulator.vehicle import InflowSpec, SimState, Vehicle

logger = logging.getLogger(__name__)

# (network, entry road, destination, occupancy) -> road ids, or None if unreachable
RouteFn = Callable[[RoadNetwork, str, str, Mapping[str, int]], Optional[Tuple[str, ...]]]


@dataclass(frozen=True)
class LinkModel:
    """Constants of the density-speed relation."""

    jam_density_per_lane: float = 0.15
    speed_floor: float = 0.05

    def jam_count(self, road: Road) -> float:
        return self.jam_density_per_lane * road.capacity_length

    def is_jammed(self, road: Road, count: int) -> bool:
        return count >= self.jam_count(road)

    def speed(self, road: Road, count: int) -> float:
        rho = count / road.capacity_length
        return road.speed_limit * max(self.speed_floor, 1.0 - rho / self.jam_density_per_lane)


@dataclass(frozen=True)
class RegionObservation:
    """What one fog node sees: its vehicles and its roads' occupancy."""

    region: int
    vehicles: Tuple[Vehicle, ...]
    occupancy: Dict[str, int]


# === Routing at spawn ===


def distance_route(
    network: RoadNetwork, entry_road: str, destination: str, occupancy: Mapping[str, int]
) -> Optional[Tuple[str, ...]]:
    """Free-flow shortest-distance route, ignoring occupancy."""
    found = shortest_path(network, network.length_weights, entry_road, destination)
    return found.roads if found else None


def density_route(
    network: RoadNetwork, entry_road: str, destination: str, occupancy: Mapping[str, int]
) -> Optional[Tuple[str, ...]]:
    """Density-only route from the rule-based weights."""
    weights = baseline_weights(occupancy, network.road_ids)
    found = shortest_path(network, weights, entry_road, destination)
    return found.roads if found else None


# === Validation ===


def validate_inflows(network: RoadNetwork, inflows: Sequence[InflowSpec]) -> None:
    """
    Reject inflows that could never deliver a vehicle.

    Raises:
        ScenarioError: unknown entry road or destination, negative rate,
            or destination unreachable from the entry road
    """
    junctions = set(network.junctions)
    for index, spec in enumerate(inflows):
        where = f"inflows[{index}]"
        if not network.has_road(spec.entry_road):
            raise ScenarioError(f"unknown entry road '{spec.entry_road}'", field=where)
        if spec.destination_junction not in junctions:
            raise ScenarioError(
                f"unknown destination junction '{spec.destination_junction}'", field=where
            )
        if spec.rate < 0:
            raise ScenarioError(f"negative inflow rate {spec.rate}", field=where)
        if not network.can_reach(spec.entry_road, spec.destination_junction):
            raise ScenarioError(
                f"destination '{spec.destination_junction}' unreachable "
                f"from entry road '{spec.entry_road}'",
                field=where,
            )


# === Operations ===


def step_tick(state: SimState, network: RoadNetwork, dt: float, model: LinkModel) -> SimState:
    """
    Advance every active vehicle by one tick of dt seconds.

    Raises:
        ValueError: dt is not positive
        SimulationConsistencyError: a vehicle ran out of route before its destination
    """
    if not dt > 0:
        raise ValueError(f"tick length must be positive, got {dt}")

    # density seen by a vehicle excludes itself, so a lone vehicle drives at free flow
    speeds = {
        road_id: model.speed(network.road(road_id), count - 1)
        for road_id, count in state.occupancy.items()
    }
    order = sorted(state.active(), key=lambda v: (v.current_road, -v.offset, v.id))
    end_clock = state.clock + dt

    for vehicle in order:
        road = network.road(vehicle.current_road)
        speed = speeds[road.id]
        advanced = vehicle.offset + speed * dt

        if advanced < road.length:
            vehicle.offset = advanced
            vehicle.speed = speed
            continue

        if vehicle.on_final_road:
            if road.to_junction != vehicle.destination_junction:
                raise SimulationConsistencyError(
                    f"route exhausted at '{road.to_junction}' before destination "
                    f"'{vehicle.destination_junction}'",
                    vehicle_id=vehicle.id,
                )
            state.retire(vehicle, end_clock - vehicle.spawn_clock)
            continue

        next_road = network.road(vehicle.route[vehicle.route_position + 1])
        if next_road.from_junction != road.to_junction:
            raise SimulationConsistencyError(
                f"route is disconnected between '{road.id}' and '{next_road.id}'",
                vehicle_id=vehicle.id,
            )
        if model.is_jammed(next_road, state.count(next_road.id)):
            vehicle.offset = road.length
            vehicle.speed = 0.0
            continue

        state.move(vehicle, vehicle.route_position + 1)
        vehicle.offset = min(advanced - road.length, next_road.length)
        vehicle.speed = min(speed, next_road.speed_limit)

    state.clock = end_clock
    return state


def spawn(
    state: SimState,
    network: RoadNetwork,
    inflows: Sequence[InflowSpec],
    rng: np.random.Generator,
    dt: float,
    model: LinkModel,
    route_for: Optional[Dict[VehicleClass, RouteFn]] = None,
) -> SimState:
    """
    One Bernoulli draw per inflow.

    The draw always happens, even when the quota is exhausted or the entry
    road is jammed, so the random stream does not depend on traffic state.
    """
    route_for = route_for or {VehicleClass.RV: distance_route, VehicleClass.BV: density_route}
    if len(state.spawned_per_inflow) != len(inflows):
        state.spawned_per_inflow = [0] * len(inflows)

    for index, spec in enumerate(inflows):
        draw = rng.random()
        if not draw < spec.spawn_probability(dt):
            continue
        if spec.max_vehicles is not None and state.spawned_per_inflow[index] >= spec.max_vehicles:
            continue
        entry = network.road(spec.entry_road)
        if model.is_jammed(entry, state.count(entry.id)):
            state.jam_skips += 1
            logger.debug(f"Spawn skipped: entry road jammed road={entry.id}")
            continue

        roads = route_for[spec.vehicle_class](
            network, spec.entry_road, spec.destination_junction, state.occupancy
        )
        if roads is None:
            raise SimulationConsistencyError(
                f"no route from '{spec.entry_road}' to '{spec.destination_junction}'"
            )

        state.next_serial += 1
        vehicle = Vehicle(
            id=f"{spec.vehicle_class.value.lower()}-{state.next_serial:06d}",
            vehicle_class=spec.vehicle_class,
            route=list(roads),
            route_position=0,
            offset=0.0,
            speed=0.0,
            destination_junction=spec.destination_junction,
            spawn_step=state.control_step,
            spawn_clock=state.clock,
        )
        state.add(vehicle)
        state.spawned_per_inflow[index] += 1

    return state


def observe_region(state: SimState, partition: FogPartition, region: int) -> RegionObservation:
    """Vehicles whose current road lies in the region, plus that region's occupancy."""
    if not 0 <= region < partition.n_regions:
        raise PartitionError(f"region {region} outside 0..{partition.n_regions - 1}")
    vehicles = tuple(
        v for v in state.active() if partition.region_of[v.current_road] == region
    )
    occupancy = {road_id: state.count(road_id) for road_id in partition.region_roads[region]}
    return RegionObservation(region=region, vehicles=vehicles, occupancy=occupancy)


def run_control_step(
    state: SimState,
    network: RoadNetwork,
    inflows: Sequence[InflowSpec],
    rng: np.random.Generator,
    dt: float,
    ticks_per_step: int,
    model: LinkModel,
    route_for: Optional[Dict[VehicleClass, RouteFn]] = None,
) -> SimState:
    """Apply spawn + step_tick ticks_per_step times, then bump the control-step counter."""
    if ticks_per_step < 1:
        raise ValueError(f"ticks_per_step must be >= 1, got {ticks_per_step}")
    for _ in range(ticks_per_step):
        spawn(state, network, inflows, rng, dt, model, route_for)
        step_tick(state, network, dt, model)
    state.control_step += 1
    return state
