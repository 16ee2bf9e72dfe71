"""
Routing Environment
===================

Binds the simulator, the fog graph and the router into the operations the
episode workflow calls once per control step.

WHY THIS FILE EXISTS:
- Workflow nodes stay thin: observe, reroute, advance and reward are one call each
- Router options come from the experiment file in one place
- Simulation metrics and router diagnostics are recorded where the work happens
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping

import numpy as np

from backend.schemas.experiment import ExperimentConfig, PriorityMode
from backend.schemas.scenario import ScenarioFile, VehicleClass
from backend.services.network.fog import fog_adjacency
from backend.services.network.model import FogAdjacency, FogPartition, RoadNetwork
from backend.services.routing.ebksp import AssignmentResult, PopularityObjective, assign_routes
from backend.services.routing.entropy import Normalization
from backend.services.simulator.simulator import TrafficSimulator
from backend.services.state_reward import RewardRecord, node_features, reward
from observability.metrics import reroutes, vehicles_arrived, vehicles_spawned

logger = logging.getLogger(__name__)

DIAGNOSTIC_COLUMNS = (
    "episode",
    "step",
    "vehicle_id",
    "rank",
    "high_priority",
    "candidate_count",
    "weight",
    "popularity",
)


@dataclass(frozen=True)
class RouterOptions:
    mode: PriorityMode = PriorityMode.NEAR
    high_priority_count: int = 10
    k_paths: int = 3
    popularity_objective: PopularityObjective = "min"
    entropy_normalization: Normalization = "share"

    @classmethod
    def from_experiment(cls, config: ExperimentConfig) -> "RouterOptions":
        return cls(
            mode=config.priority,
            high_priority_count=config.high_priority_count,
            k_paths=config.k_paths,
            popularity_objective=config.popularity_objective,
            entropy_normalization=config.entropy_normalization,
        )


class RoutingEnvironment:
    """One simulator plus the router settings it is driven with."""

    def __init__(
        self,
        network: RoadNetwork,
        partition: FogPartition,
        scenario: ScenarioFile,
        router: RouterOptions,
        record_diagnostics: bool = False,
    ):
        self.network = network
        self.partition = partition
        self.scenario = scenario
        self.router = router
        self.simulator = TrafficSimulator(network, partition, scenario)
        self.adjacency: FogAdjacency = fog_adjacency(network, partition)
        self.record_diagnostics = record_diagnostics
        self.diagnostics: List[Dict[str, object]] = []
        self.episode = 0

    @property
    def max_control_steps(self) -> int:
        return self.simulator.max_control_steps

    def reset(self, rng: np.random.Generator, episode: int = 0) -> None:
        self.episode = episode
        self.simulator.reset(rng)

    # === Per-step operations ===

    def observe(self) -> np.ndarray:
        return node_features(
            self.simulator.state, self.partition, self.network, self.scenario.tau
        )

    def occupancy(self) -> Mapping[str, int]:
        return dict(self.simulator.state.occupancy)

    def reroute(self, weights: Mapping[str, float]) -> AssignmentResult:
        """Assign and apply one route per active RV."""
        vehicles = self.simulator.rerouting_vehicles()
        result = assign_routes(
            vehicles,
            self.network,
            weights,
            self.router.mode,
            self.router.high_priority_count,
            self.router.k_paths,
            popularity_objective=self.router.popularity_objective,
            normalization=self.router.entropy_normalization,
        )
        by_id = {v.id: v for v in vehicles}
        for vehicle_id, candidate in result.routes.items():
            by_id[vehicle_id].replace_route(candidate.roads)
        reroutes.labels(outcome="applied").inc(len(result.routes))
        reroutes.labels(outcome="kept").inc(len(result.kept))

        if self.record_diagnostics:
            step = self.simulator.state.control_step
            for decision in result.decisions:
                self.diagnostics.append(
                    {
                        "episode": self.episode,
                        "step": step,
                        "vehicle_id": decision.vehicle_id,
                        "rank": decision.rank,
                        "high_priority": decision.high_priority,
                        "candidate_count": decision.candidate_count,
                        "weight": decision.weight,
                        "popularity": decision.popularity,
                    }
                )
        return result

    def advance(self) -> None:
        state = self.simulator.state
        spawned = {c: state.spawned[c] for c in VehicleClass}
        arrived = {c: state.arrived_count(c) for c in VehicleClass}
        self.simulator.run_control_step()
        for vehicle_class in VehicleClass:
            vehicles_spawned.labels(vehicle_class=vehicle_class.value).inc(
                state.spawned[vehicle_class] - spawned[vehicle_class]
            )
            vehicles_arrived.labels(vehicle_class=vehicle_class.value).inc(
                state.arrived_count(vehicle_class) - arrived[vehicle_class]
            )

    def reward(self, prev_mean_rv_speed: float) -> RewardRecord:
        return reward(prev_mean_rv_speed, self.simulator.state, self.scenario.reward_weights)

    def done(self) -> bool:
        return self.simulator.done()

    @property
    def control_step(self) -> int:
        return self.simulator.state.control_step
