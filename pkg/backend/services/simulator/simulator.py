"""
Traffic Simulator
=================

Episode-level facade over the engine functions.

WHY THIS FILE EXISTS:
- The episode loop needs one object that owns network, demand and state
- Scenario validation happens once, when the simulator is built
- The done rule and conservation checks live with the state they inspect

USAGE:
    sim = TrafficSimulator(network, partition, scenario)
    sim.reset(np.random.default_rng([seed, episode, 0]))
    while not sim.done():
        sim.run_control_step()
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from backend.core.exceptions import SimulationConsistencyError
from backend.schemas.scenario import ScenarioFile, VehicleClass
from backend.services.network.model import FogPartition, RoadNetwork
from backend.services.simulator.engine import (
    LinkModel,
    RegionObservation,
    observe_region,
    run_control_step,
    validate_inflows,
)
from backend.services.simulator.vehicle import InflowSpec, SimState, Vehicle

logger = logging.getLogger(__name__)


class TrafficSimulator:
    """Owns one episode's SimState and advances it in control steps."""

    def __init__(
        self,
        network: RoadNetwork,
        partition: FogPartition,
        scenario: ScenarioFile,
    ):
        self.network = network
        self.partition = partition
        self.scenario = scenario
        self.inflows: Tuple[InflowSpec, ...] = tuple(
            InflowSpec.from_record(record) for record in scenario.inflows
        )
        validate_inflows(network, self.inflows)
        self.model = LinkModel(
            jam_density_per_lane=scenario.jam_density_per_lane,
            speed_floor=scenario.speed_floor,
        )
        self.state = SimState(spawned_per_inflow=[0] * len(self.inflows))
        self._rng: Optional[np.random.Generator] = None

    def reset(self, rng: np.random.Generator) -> SimState:
        """Fresh empty network at clock 0, driven by rng."""
        self.state = SimState(spawned_per_inflow=[0] * len(self.inflows))
        self._rng = rng
        return self.state

    @property
    def max_control_steps(self) -> int:
        return self.scenario.max_control_steps

    def run_control_step(self) -> SimState:
        if self._rng is None:
            raise RuntimeError("reset() must be called before run_control_step()")
        spawned_before = self.state.total_spawned
        arrived_before = len(self.state.arrived)
        run_control_step(
            self.state,
            self.network,
            self.inflows,
            self._rng,
            self.scenario.tick_seconds,
            self.scenario.ticks_per_control_step,
            self.model,
        )
        self.check_invariants()
        logger.debug(
            f"Control step done step={self.state.control_step} "
            f"spawned={self.state.total_spawned - spawned_before} "
            f"arrived={len(self.state.arrived) - arrived_before} "
            f"active={len(self.state.vehicles)}"
        )
        return self.state

    # === Observation ===

    def observe(self, region: int) -> RegionObservation:
        return observe_region(self.state, self.partition, region)

    def rerouting_vehicles(self) -> List[Vehicle]:
        return self.state.rerouting_vehicles()

    # === Episode termination ===

    def done(self) -> bool:
        """
        True once every RV the scenario can produce has arrived.

        Requires a quota on every RV inflow, all quotas spawned, at least one
        RV spawned and no RV still active. Scenarios without RV quotas
        therefore always run to the step cap.
        """
        rv_inflows = [
            (index, spec)
            for index, spec in enumerate(self.inflows)
            if spec.vehicle_class == VehicleClass.RV
        ]
        if not rv_inflows:
            return False
        for index, spec in rv_inflows:
            if spec.max_vehicles is None:
                return False
            if self.state.spawned_per_inflow[index] < spec.max_vehicles:
                return False
        if self.state.spawned[VehicleClass.RV] == 0:
            return False
        return not any(v.is_rv for v in self.state.active())

    # === Invariants ===

    def check_invariants(self) -> None:
        """
        Raises:
            SimulationConsistencyError: conservation or occupancy bookkeeping broken
        """
        state = self.state
        if not state.is_conserved():
            raise SimulationConsistencyError(
                f"spawned={state.total_spawned} != active={len(state.vehicles)} "
                f"+ arrived={len(state.arrived)}"
            )
        if state.recount_occupancy() != state.occupancy:
            raise SimulationConsistencyError("incremental occupancy diverged from recount")
