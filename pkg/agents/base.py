"""
Base Routing Policy
===================

Abstract base class for everything that turns a control-step observation
into road weights.

WHY THIS FILE EXISTS:
- The episode workflow drives the GAQ agent and both baselines the same way
- Provides common functionality (timing, metrics, logging)
- Learning hooks default to no-ops so rule-based policies stay tiny

ALL POLICIES MUST:
1. Inherit from RoutingPolicy
2. Implement decide()
3. Return a PolicyDecision with weights for every road
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from backend.schemas.experiment import EpisodeMode
from backend.services.network.model import FogAdjacency, FogPartition, RoadNetwork
from backend.services.routing.weights import RoadWeights
from observability.metrics import policy_latency

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolicyContext:
    """Everything a policy may look at when choosing road weights."""

    features: np.ndarray
    adjacency: FogAdjacency
    occupancy: Mapping[str, int]
    mode: EpisodeMode
    rng: np.random.Generator
    episode: int = 0


@dataclass(frozen=True)
class PolicyDecision:
    """Road weights plus the per-region actions behind them, if any."""

    weights: RoadWeights
    actions: Optional[np.ndarray] = None
    epsilon: float = 0.0


@dataclass(frozen=True)
class Transition:
    """One (s, a, r, s', done) record for experience replay."""

    features: np.ndarray
    adjacency: FogAdjacency
    actions: np.ndarray
    reward: float
    next_features: np.ndarray
    next_adjacency: FogAdjacency
    done: bool


class RoutingPolicy(ABC):
    """
    Abstract base class for routing policies.

    Provides:
    - Consistent interface for the episode workflow
    - Automatic timing of decide() calls
    - Default no-op learning hooks
    """

    learns: bool = False

    def __init__(self, name: str, network: RoadNetwork, partition: FogPartition):
        self.name = name
        self.network = network
        self.partition = partition

    @abstractmethod
    def decide(self, context: PolicyContext) -> PolicyDecision:
        """Road weights for the coming control step."""

    def run(self, context: PolicyContext) -> PolicyDecision:
        """
        Wrapper around decide() that adds timing and metrics.

        This is what the workflow actually calls.
        """
        start = time.perf_counter()
        decision = self.decide(context)
        elapsed = time.perf_counter() - start
        policy_latency.labels(policy=self.name).observe(elapsed)
        logger.debug(
            f"Policy decided policy={self.name} mode={context.mode.value} "
            f"actions={None if decision.actions is None else decision.actions.tolist()} "
            f"elapsed_ms={elapsed * 1000:.2f}"
        )
        return decision

    # === Learning hooks ===

    def remember(self, transition: Transition) -> None:
        """Store a transition. Rule-based policies ignore it."""

    def learn(self, mode: EpisodeMode, rng: np.random.Generator) -> Optional[float]:
        """Run one training update and return its loss, or None."""
        return None

    def end_episode(self, mode: EpisodeMode, rng: np.random.Generator) -> Optional[float]:
        """Called once per finished episode. May train and return a loss."""
        return None

    def epsilon_for(self, mode: EpisodeMode, episode: int) -> float:
        return 0.0
