"""
Simulator Services
==================

Mesoscopic link-model traffic simulator.

Modules:
- vehicle.py: Vehicle, InflowSpec, ArrivalRecord, SimState
- engine.py: LinkModel, step_tick, spawn, observe_region, run_control_step
- simulator.py: TrafficSimulator episode facade
"""

from backend.services.simulator.engine import (
    LinkModel,
    RegionObservation,
    density_route,
    distance_route,
    observe_region,
    run_control_step,
    spawn,
    step_tick,
    validate_inflows,
)
from backend.services.simulator.simulator import TrafficSimulator
from backend.services.simulator.vehicle import ArrivalRecord, InflowSpec, SimState, Vehicle

__all__ = [
    "ArrivalRecord",
    "InflowSpec",
    "LinkModel",
    "RegionObservation",
    "SimState",
    "TrafficSimulator",
    "Vehicle",
    "density_route",
    "distance_route",
    "observe_region",
    "run_control_step",
    "spawn",
    "step_tick",
    "validate_inflows",
]
