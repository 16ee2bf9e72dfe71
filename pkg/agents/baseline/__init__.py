"""
Baseline Policies
=================

Reference policies that never learn.

- DensityBaselinePolicy: the rule-based router. Road weights follow vehicle
  counts only, as if every region chose index 0.
- RandomIndexPolicy: uniform random index per region every control step,
  the "random actions" reference a trained agent has to beat.
"""

from agents.base import PolicyContext, PolicyDecision, RoutingPolicy
from backend.schemas.scenario import BalanceTerms
from backend.services.network.model import FogPartition, RoadNetwork
from backend.services.neural.model import ACTION_COUNT
from backend.services.routing.weights import baseline_weights, road_weights


class DensityBaselinePolicy(RoutingPolicy):
    def __init__(self, network: RoadNetwork, partition: FogPartition):
        super().__init__(name="baseline", network=network, partition=partition)

    def decide(self, context: PolicyContext) -> PolicyDecision:
        return PolicyDecision(weights=baseline_weights(context.occupancy, self.network.road_ids))


class RandomIndexPolicy(RoutingPolicy):
    def __init__(self, network: RoadNetwork, partition: FogPartition, balance: BalanceTerms):
        super().__init__(name="random", network=network, partition=partition)
        self.balance = balance

    def decide(self, context: PolicyContext) -> PolicyDecision:
        actions = context.rng.integers(0, ACTION_COUNT, size=self.partition.n_regions)
        weights = road_weights(
            actions,
            context.occupancy,
            self.partition,
            t1=self.balance.index,
            t2=self.balance.density,
        )
        return PolicyDecision(weights=weights, actions=actions, epsilon=1.0)
