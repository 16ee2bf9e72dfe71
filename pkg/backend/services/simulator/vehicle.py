"""
Simulator Domain Types
======================

Vehicles, inflows and the mutable simulation state.

WHY THIS FILE EXISTS:
- The simulator, the router and the state/reward code all read vehicles
- Occupancy is kept incrementally and can be recounted from scratch
- Spawn bookkeeping (per class and per inflow) lives next to the vehicles it counts

SimState is single-writer. Every mutating operation in engine.py updates it in
place and returns it so calls can be chained.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from backend.schemas.scenario import InflowRecord, VehicleClass


@dataclass
class Vehicle:
    """An RV or BV travelling along a road-id route."""

    id: str
    vehicle_class: VehicleClass
    route: List[str]
    route_position: int
    offset: float
    speed: float
    destination_junction: str
    spawn_step: int
    spawn_clock: float

    @property
    def current_road(self) -> str:
        return self.route[self.route_position]

    @property
    def on_final_road(self) -> bool:
        return self.route_position == len(self.route) - 1

    @property
    def is_rv(self) -> bool:
        return self.vehicle_class == VehicleClass.RV

    def replace_route(self, roads: Tuple[str, ...]) -> None:
        """Swap in a new route that starts with the current road."""
        if not roads or roads[0] != self.current_road:
            raise ValueError(
                f"new route for {self.id} must start at {self.current_road}, got {roads[:1]}"
            )
        self.route = self.route[: self.route_position] + list(roads)


@dataclass(frozen=True)
class InflowSpec:
    """Bernoulli inflow of one vehicle class at an entry road."""

    entry_road: str
    vehicle_class: VehicleClass
    rate: float
    destination_junction: str
    max_vehicles: Optional[int] = None

    @classmethod
    def from_record(cls, record: InflowRecord) -> "InflowSpec":
        return cls(
            entry_road=record.entry_road,
            vehicle_class=record.vehicle_class,
            rate=record.rate_vph,
            destination_junction=record.destination,
            max_vehicles=record.max_vehicles,
        )

    def spawn_probability(self, dt: float) -> float:
        """p = rate * dt / 3600, capped at 1."""
        return min(1.0, self.rate * dt / 3600.0)


@dataclass(frozen=True)
class ArrivalRecord:
    vehicle_id: str
    vehicle_class: VehicleClass
    travel_time: float


@dataclass
class SimState:
    """Clock, active vehicles, arrivals and occupancy for one episode."""

    clock: float = 0.0
    control_step: int = 0
    vehicles: Dict[str, Vehicle] = field(default_factory=dict)
    arrived: List[ArrivalRecord] = field(default_factory=list)
    occupancy: Counter = field(default_factory=Counter)
    spawned: Counter = field(default_factory=Counter)
    spawned_per_inflow: List[int] = field(default_factory=list)
    jam_skips: int = 0
    next_serial: int = 0

    # === Queries ===

    def active(self) -> Iterator[Vehicle]:
        return iter(self.vehicles.values())

    def rerouting_vehicles(self) -> List[Vehicle]:
        """Active RVs ordered by id."""
        return sorted((v for v in self.vehicles.values() if v.is_rv), key=lambda v: v.id)

    def count(self, road_id: str) -> int:
        return self.occupancy.get(road_id, 0)

    @property
    def total_spawned(self) -> int:
        return sum(self.spawned.values())

    def arrived_count(self, vehicle_class: Optional[VehicleClass] = None) -> int:
        if vehicle_class is None:
            return len(self.arrived)
        return sum(1 for record in self.arrived if record.vehicle_class == vehicle_class)

    def recount_occupancy(self) -> Counter:
        """Occupancy tallied from scratch, for consistency checks."""
        return Counter(v.current_road for v in self.vehicles.values())

    def is_conserved(self) -> bool:
        return self.total_spawned == len(self.vehicles) + len(self.arrived)

    # === Mutations ===

    def add(self, vehicle: Vehicle) -> None:
        self.vehicles[vehicle.id] = vehicle
        self.occupancy[vehicle.current_road] += 1
        self.spawned[vehicle.vehicle_class] += 1

    def move(self, vehicle: Vehicle, to_position: int) -> None:
        old = vehicle.current_road
        vehicle.route_position = to_position
        self.occupancy[old] -= 1
        if self.occupancy[old] == 0:
            del self.occupancy[old]
        self.occupancy[vehicle.current_road] += 1

    def retire(self, vehicle: Vehicle, travel_time: float) -> None:
        road = vehicle.current_road
        self.occupancy[road] -= 1
        if self.occupancy[road] == 0:
            del self.occupancy[road]
        del self.vehicles[vehicle.id]
        self.arrived.append(ArrivalRecord(vehicle.id, vehicle.vehicle_class, travel_time))
